//! Product-knowledge ontology: a class tree rooted at `thing` with registered
//! product branches (e.g. `phone`, `hotel`) and role-tagged entity surfaces.
//!
//! The on-disk format is line based. `#` starts a comment, blank lines are
//! ignored, and each remaining line is one record:
//!
//! ```text
//! class <id> parent=<id|-> [role=<component|style|origin|popularname>]
//! branch <category> class=<id>
//! entity "<surface>" class=<id>
//! ```
//!
//! Identifiers are case-folded to `[a-z0-9_.]+`; `-` marks the single root
//! class, which must be named `thing`. Entity surfaces are normalized at load
//! (lower case, single internal spaces) and must be quoted when they contain
//! spaces. Classes without an explicit role inherit the nearest role-tagged
//! ancestor's role, which is how every entity resolves to a role.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use thiserror::Error;

/// Identifier of the single root class every parent chain must reach.
pub const ROOT_CLASS: &str = "thing";

/// Role a class plays within a product branch; entities attached to a class
/// inherit the nearest role-tagged ancestor's role.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ClassRole {
    ComponentFeature,
    Style,
    Origin,
    PopularName,
}

impl ClassRole {
    /// Keyword used by the `role=` key in ontology files.
    pub fn keyword(self) -> &'static str {
        match self {
            ClassRole::ComponentFeature => "component",
            ClassRole::Style => "style",
            ClassRole::Origin => "origin",
            ClassRole::PopularName => "popularname",
        }
    }

    fn from_keyword(word: &str) -> Option<Self> {
        match word {
            "component" => Some(ClassRole::ComponentFeature),
            "style" => Some(ClassRole::Style),
            "origin" => Some(ClassRole::Origin),
            "popularname" => Some(ClassRole::PopularName),
            _ => None,
        }
    }
}

impl fmt::Display for ClassRole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.keyword())
    }
}

/// Branch-relative classification of an entity surface: its own role when the
/// surface is known inside the reviewed branch, `Foreign` when it is known
/// only in a different branch, and `Unknown` when the ontology has no match.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EntityRole {
    ComponentFeature,
    Style,
    Origin,
    PopularName,
    Foreign,
    Unknown,
}

impl From<ClassRole> for EntityRole {
    fn from(role: ClassRole) -> Self {
        match role {
            ClassRole::ComponentFeature => EntityRole::ComponentFeature,
            ClassRole::Style => EntityRole::Style,
            ClassRole::Origin => EntityRole::Origin,
            ClassRole::PopularName => EntityRole::PopularName,
        }
    }
}

/// One `class` record: identifier, parent (`None` for the root) and the
/// explicit role from the file, if any.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OntologyClass {
    pub id: String,
    pub parent: Option<String>,
    pub role: Option<ClassRole>,
}

/// One `entity` record: a normalized surface form attached to a class.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct OntologyEntity {
    pub surface: String,
    pub class_id: String,
}

/// Errors raised while loading or querying an ontology.
#[derive(Debug, Error)]
pub enum OntologyError {
    #[error("cannot read {path}: {source}")]
    MissingFile {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("class {id} references unknown parent {parent}")]
    UnknownParent { id: String, parent: String },
    #[error("cycle detected through class {id}")]
    CycleDetected { id: String },
    #[error("{referrer} references unknown class {class_id}")]
    UnknownClass { referrer: String, class_id: String },
    #[error("duplicate entity {surface:?} in class {class_id}")]
    DuplicateEntity { surface: String, class_id: String },
    #[error("entity {surface:?} has no role: class {class_id} has no role-tagged ancestor")]
    EntityWithoutRole { surface: String, class_id: String },
    #[error("{message}")]
    Validation { message: String },
    #[error("unknown product category {0:?}")]
    UnknownCategory(String),
}

/// A validated, immutable ontology. Query methods never mutate, so shared
/// references may be used freely across threads.
#[derive(Debug, Clone)]
pub struct Ontology {
    classes: BTreeMap<String, OntologyClass>,
    entities: BTreeSet<OntologyEntity>,
    branches: BTreeMap<String, String>,
    /// Effective (inherited) role per class, computed at load.
    effective_roles: BTreeMap<String, Option<ClassRole>>,
    /// Branch categories whose subtree contains each class, computed at load.
    branch_memberships: BTreeMap<String, BTreeSet<String>>,
    /// Surface form to the sorted class ids that declare it, computed at load.
    surface_classes: BTreeMap<String, Vec<String>>,
}

impl PartialEq for Ontology {
    fn eq(&self, other: &Self) -> bool {
        self.classes == other.classes
            && self.entities == other.entities
            && self.branches == other.branches
    }
}

impl Eq for Ontology {}

impl Ontology {
    /// Number of `class` records.
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    /// Number of `entity` records.
    pub fn entity_count(&self) -> usize {
        self.entities.len()
    }

    /// All classes in identifier order.
    pub fn classes(&self) -> impl Iterator<Item = &OntologyClass> {
        self.classes.values()
    }

    /// All entities in (surface, class) order.
    pub fn entities(&self) -> impl Iterator<Item = &OntologyEntity> {
        self.entities.iter()
    }

    /// Registered product branches as a category-to-class-id map.
    pub fn branches(&self) -> &BTreeMap<String, String> {
        &self.branches
    }

    /// Whether `category` is a registered product branch.
    pub fn has_category(&self, category: &str) -> bool {
        self.branches.contains_key(&normalize_category(category))
    }

    /// Effective role of a class: its own role or the nearest role-tagged
    /// ancestor's, if any.
    pub fn effective_role(&self, class_id: &str) -> Option<ClassRole> {
        self.effective_roles.get(class_id).copied().flatten()
    }

    /// Every entity in the branch registered for `category`, paired with its
    /// inherited role.
    pub fn entities_for_product(
        &self,
        category: &str,
    ) -> Result<BTreeSet<(String, EntityRole)>, OntologyError> {
        let category = normalize_category(category);
        if !self.branches.contains_key(&category) {
            return Err(OntologyError::UnknownCategory(category));
        }
        let mut set = BTreeSet::new();
        for entity in &self.entities {
            if self.branch_memberships[&entity.class_id].contains(&category) {
                let role = self.effective_roles[&entity.class_id]
                    .expect("validated entities always carry a role");
                set.insert((entity.surface.clone(), EntityRole::from(role)));
            }
        }
        Ok(set)
    }

    /// Branch-relative role of a normalized surface: the inherited role when
    /// the surface is declared inside the reviewed branch, `Foreign` when it
    /// is declared only elsewhere, `Unknown` when it is not declared at all.
    pub fn classify_entity(
        &self,
        category: &str,
        surface: &str,
    ) -> Result<EntityRole, OntologyError> {
        Ok(match self.classify_detailed(category, surface)? {
            Some((role, _)) => role,
            None => EntityRole::Unknown,
        })
    }

    /// Like [`classify_entity`](Self::classify_entity) but also reports the
    /// matched entity's underlying class role, which for `Foreign` matches
    /// tells what the surface means in its home branch. Returns `None` for
    /// unknown surfaces.
    pub fn classify_detailed(
        &self,
        category: &str,
        surface: &str,
    ) -> Result<Option<(EntityRole, ClassRole)>, OntologyError> {
        let category = normalize_category(category);
        if !self.branches.contains_key(&category) {
            return Err(OntologyError::UnknownCategory(category));
        }
        let Some(class_ids) = self.surface_classes.get(surface) else {
            return Ok(None);
        };
        for class_id in class_ids {
            if self.branch_memberships[class_id].contains(&category) {
                let role =
                    self.effective_roles[class_id].expect("validated entities always carry a role");
                return Ok(Some((EntityRole::from(role), role)));
            }
        }
        let first = &class_ids[0];
        let role = self.effective_roles[first].expect("validated entities always carry a role");
        Ok(Some((EntityRole::Foreign, role)))
    }
}

/// Load and validate an ontology file.
pub fn load_ontology(path: impl AsRef<Path>) -> Result<Ontology, OntologyError> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|source| OntologyError::MissingFile {
        path: path.to_path_buf(),
        source,
    })?;
    parse_ontology(&text)
}

/// Parse and validate ontology records from text in the line-based format.
pub fn parse_ontology(text: &str) -> Result<Ontology, OntologyError> {
    let mut classes: BTreeMap<String, OntologyClass> = BTreeMap::new();
    let mut entities: BTreeSet<OntologyEntity> = BTreeSet::new();
    let mut branches: BTreeMap<String, String> = BTreeMap::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (keyword, rest) = match line.split_once(char::is_whitespace) {
            Some(parts) => parts,
            None => {
                return Err(syntax(
                    line_no,
                    "expected a `class`, `branch`, or `entity` record",
                ))
            }
        };
        match keyword {
            "class" => {
                let record = parse_class(rest, line_no)?;
                if classes.contains_key(&record.id) {
                    return Err(syntax(
                        line_no,
                        format!("class {} already defined", record.id),
                    ));
                }
                classes.insert(record.id.clone(), record);
            }
            "branch" => {
                let (category, class_id) = parse_branch(rest, line_no)?;
                if branches.contains_key(&category) {
                    return Err(syntax(
                        line_no,
                        format!("branch {category} already defined"),
                    ));
                }
                branches.insert(category, class_id);
            }
            "entity" => {
                let entity = parse_entity(rest, line_no)?;
                if !entities.insert(entity.clone()) {
                    return Err(OntologyError::DuplicateEntity {
                        surface: entity.surface,
                        class_id: entity.class_id,
                    });
                }
            }
            other => {
                return Err(syntax(line_no, format!("unknown record type {other:?}")));
            }
        }
    }

    build(classes, entities, branches)
}

/// Render an ontology back into the line-based file format. Records are
/// emitted in sorted order and surfaces are quoted exactly when they contain
/// spaces, so the output reloads to an equal ontology.
pub fn serialize_ontology(ontology: &Ontology) -> String {
    let mut out = String::new();
    for class in ontology.classes.values() {
        out.push_str("class ");
        out.push_str(&class.id);
        out.push_str(" parent=");
        out.push_str(class.parent.as_deref().unwrap_or("-"));
        if let Some(role) = class.role {
            out.push_str(" role=");
            out.push_str(role.keyword());
        }
        out.push('\n');
    }
    for (category, class_id) in &ontology.branches {
        out.push_str("branch ");
        out.push_str(category);
        out.push_str(" class=");
        out.push_str(class_id);
        out.push('\n');
    }
    for entity in &ontology.entities {
        out.push_str("entity ");
        if entity.surface.contains(' ') {
            out.push('"');
            out.push_str(&entity.surface);
            out.push('"');
        } else {
            out.push_str(&entity.surface);
        }
        out.push_str(" class=");
        out.push_str(&entity.class_id);
        out.push('\n');
    }
    out
}

fn syntax(line: usize, message: impl Into<String>) -> OntologyError {
    OntologyError::Syntax {
        line,
        message: message.into(),
    }
}

fn normalize_category(category: &str) -> String {
    category.trim().to_lowercase()
}

fn normalize_identifier(word: &str, line: usize) -> Result<String, OntologyError> {
    let id = word.trim().to_lowercase();
    let valid = !id.is_empty()
        && id
            .chars()
            .all(|c| c.is_ascii_lowercase() || c.is_ascii_digit() || c == '_' || c == '.');
    if valid {
        Ok(id)
    } else {
        Err(syntax(line, format!("invalid identifier {word:?}")))
    }
}

fn normalize_surface(raw: &str) -> String {
    raw.to_lowercase()
        .split_whitespace()
        .collect::<Vec<_>>()
        .join(" ")
}

/// Split `key=value` fields, rejecting duplicates and keys outside `allowed`.
fn parse_fields<'a>(
    rest: &'a str,
    allowed: &[&str],
    line: usize,
) -> Result<BTreeMap<&'a str, &'a str>, OntologyError> {
    let mut fields = BTreeMap::new();
    for token in rest.split_whitespace() {
        let (key, value) = token
            .split_once('=')
            .ok_or_else(|| syntax(line, format!("expected key=value, found {token:?}")))?;
        if !allowed.contains(&key) {
            return Err(syntax(line, format!("unknown key {key:?}")));
        }
        if fields.insert(key, value).is_some() {
            return Err(syntax(line, format!("duplicate key {key:?}")));
        }
    }
    Ok(fields)
}

fn parse_class(rest: &str, line: usize) -> Result<OntologyClass, OntologyError> {
    let mut parts = rest.trim().splitn(2, char::is_whitespace);
    let id_word = parts.next().filter(|w| !w.is_empty());
    let Some(id_word) = id_word else {
        return Err(syntax(line, "class record missing identifier"));
    };
    let id = normalize_identifier(id_word, line)?;
    let fields = parse_fields(parts.next().unwrap_or(""), &["parent", "role"], line)?;
    let Some(parent_word) = fields.get("parent") else {
        return Err(syntax(line, "class record missing parent="));
    };
    let parent = if *parent_word == "-" {
        None
    } else {
        Some(normalize_identifier(parent_word, line)?)
    };
    let role = match fields.get("role") {
        None => None,
        Some(word) => Some(
            ClassRole::from_keyword(&word.to_lowercase())
                .ok_or_else(|| syntax(line, format!("unknown role {word:?}")))?,
        ),
    };
    Ok(OntologyClass { id, parent, role })
}

fn parse_branch(rest: &str, line: usize) -> Result<(String, String), OntologyError> {
    let mut parts = rest.trim().splitn(2, char::is_whitespace);
    let Some(category_word) = parts.next().filter(|w| !w.is_empty()) else {
        return Err(syntax(line, "branch record missing category"));
    };
    let category = normalize_identifier(category_word, line)?;
    let fields = parse_fields(parts.next().unwrap_or(""), &["class"], line)?;
    let Some(class_word) = fields.get("class") else {
        return Err(syntax(line, "branch record missing class="));
    };
    Ok((category, normalize_identifier(class_word, line)?))
}

fn parse_entity(rest: &str, line: usize) -> Result<OntologyEntity, OntologyError> {
    let rest = rest.trim_start();
    let (surface_raw, remainder) = if let Some(stripped) = rest.strip_prefix('"') {
        let Some(end) = stripped.find('"') else {
            return Err(syntax(line, "unterminated quoted surface"));
        };
        (&stripped[..end], &stripped[end + 1..])
    } else {
        match rest.split_once(char::is_whitespace) {
            Some((word, remainder)) => (word, remainder),
            None => (rest, ""),
        }
    };
    let surface = normalize_surface(surface_raw);
    if surface.is_empty() {
        return Err(syntax(line, "entity record has an empty surface"));
    }
    let fields = parse_fields(remainder, &["class"], line)?;
    let Some(class_word) = fields.get("class") else {
        return Err(syntax(line, "entity record missing class="));
    };
    Ok(OntologyEntity {
        surface,
        class_id: normalize_identifier(class_word, line)?,
    })
}

fn build(
    classes: BTreeMap<String, OntologyClass>,
    entities: BTreeSet<OntologyEntity>,
    branches: BTreeMap<String, String>,
) -> Result<Ontology, OntologyError> {
    let roots: Vec<&str> = classes
        .values()
        .filter(|c| c.parent.is_none())
        .map(|c| c.id.as_str())
        .collect();
    match roots.as_slice() {
        [] => {
            return Err(OntologyError::Validation {
                message: "no root class (parent=-) declared".into(),
            })
        }
        [root] if *root != ROOT_CLASS => {
            return Err(OntologyError::Validation {
                message: format!("root class must be named {ROOT_CLASS}, found {root}"),
            })
        }
        [_] => {}
        several => {
            return Err(OntologyError::Validation {
                message: format!("multiple root classes declared: {}", several.join(", ")),
            })
        }
    }

    for class in classes.values() {
        if let Some(parent) = &class.parent {
            if !classes.contains_key(parent) {
                return Err(OntologyError::UnknownParent {
                    id: class.id.clone(),
                    parent: parent.clone(),
                });
            }
        }
    }

    // Walk every parent chain with a step budget: a chain longer than the
    // class count can only mean a cycle (the root terminates all others).
    for class in classes.values() {
        let mut cursor = class;
        let mut steps = 0usize;
        while let Some(parent) = &cursor.parent {
            steps += 1;
            if steps > classes.len() {
                return Err(OntologyError::CycleDetected {
                    id: class.id.clone(),
                });
            }
            cursor = &classes[parent];
        }
    }

    for (category, class_id) in &branches {
        if !classes.contains_key(class_id) {
            return Err(OntologyError::UnknownClass {
                referrer: format!("branch {category}"),
                class_id: class_id.clone(),
            });
        }
    }

    let mut effective_roles = BTreeMap::new();
    let mut branch_memberships = BTreeMap::new();
    let branch_classes: BTreeMap<&str, Vec<&str>> = {
        let mut map: BTreeMap<&str, Vec<&str>> = BTreeMap::new();
        for (category, class_id) in &branches {
            map.entry(class_id.as_str())
                .or_default()
                .push(category.as_str());
        }
        map
    };
    for class in classes.values() {
        let mut role = None;
        let mut memberships = BTreeSet::new();
        let mut cursor = Some(class);
        while let Some(current) = cursor {
            if role.is_none() {
                role = current.role;
            }
            if let Some(categories) = branch_classes.get(current.id.as_str()) {
                memberships.extend(categories.iter().map(|c| c.to_string()));
            }
            cursor = current.parent.as_ref().map(|p| &classes[p]);
        }
        effective_roles.insert(class.id.clone(), role);
        branch_memberships.insert(class.id.clone(), memberships);
    }

    // A role tag is only meaningful inside a product branch, and the branch
    // class itself stays untagged, so tagged classes must sit strictly below
    // a branch class.
    for class in classes.values() {
        if class.role.is_none() {
            continue;
        }
        let strictly_below = class
            .parent
            .as_ref()
            .map(|p| !branch_memberships[p].is_empty())
            .unwrap_or(false);
        if !strictly_below {
            return Err(OntologyError::Validation {
                message: format!(
                    "role-tagged class {} is not below a product branch",
                    class.id
                ),
            });
        }
    }

    let mut surface_classes: BTreeMap<String, Vec<String>> = BTreeMap::new();
    for entity in &entities {
        if !classes.contains_key(&entity.class_id) {
            return Err(OntologyError::UnknownClass {
                referrer: format!("entity {:?}", entity.surface),
                class_id: entity.class_id.clone(),
            });
        }
        if effective_roles[&entity.class_id].is_none() {
            return Err(OntologyError::EntityWithoutRole {
                surface: entity.surface.clone(),
                class_id: entity.class_id.clone(),
            });
        }
        surface_classes
            .entry(entity.surface.clone())
            .or_default()
            .push(entity.class_id.clone());
    }

    Ok(Ontology {
        classes,
        entities,
        branches,
        effective_roles,
        branch_memberships,
        surface_classes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fixture() -> Ontology {
        load_ontology(concat!(
            env!("CARGO_MANIFEST_DIR"),
            "/fixtures/phone_hotel.ont"
        ))
        .expect("fixture ontology loads")
    }

    #[test]
    fn fixture_counts() {
        let o = fixture();
        assert_eq!(o.class_count(), 14);
        assert_eq!(o.entity_count(), 52);
        assert_eq!(o.branches().len(), 3);
    }

    #[test]
    fn classify_own_branch() {
        let o = fixture();
        assert_eq!(
            o.classify_entity("phone", "iphone").unwrap(),
            EntityRole::PopularName
        );
        assert_eq!(
            o.classify_entity("phone", "screen").unwrap(),
            EntityRole::ComponentFeature
        );
        assert_eq!(
            o.classify_entity("phone", "samsung").unwrap(),
            EntityRole::Origin
        );
    }

    #[test]
    fn classify_foreign_and_unknown() {
        let o = fixture();
        assert_eq!(
            o.classify_entity("phone", "macbook").unwrap(),
            EntityRole::Foreign
        );
        assert_eq!(
            o.classify_entity("phone", "zzzz").unwrap(),
            EntityRole::Unknown
        );
        assert_eq!(
            o.classify_detailed("phone", "macbook pro").unwrap(),
            Some((EntityRole::Foreign, ClassRole::PopularName))
        );
    }

    #[test]
    fn role_inheritance_through_untagged_subclass() {
        let o = fixture();
        assert_eq!(
            o.effective_role("phone.component.hardware"),
            Some(ClassRole::ComponentFeature)
        );
        assert_eq!(
            o.classify_entity("phone", "ram").unwrap(),
            EntityRole::ComponentFeature
        );
    }

    #[test]
    fn shared_surface_prefers_reviewed_branch() {
        let o = fixture();
        assert_eq!(
            o.classify_entity("laptop", "screen").unwrap(),
            EntityRole::ComponentFeature
        );
        assert_eq!(
            o.classify_entity("hotel", "screen").unwrap(),
            EntityRole::Foreign
        );
    }

    #[test]
    fn entities_for_product_examples() {
        let o = fixture();
        let phone = o.entities_for_product("phone").unwrap();
        assert!(phone.contains(&("iphone".to_string(), EntityRole::PopularName)));
        let hotel = o.entities_for_product("hotel").unwrap();
        assert!(!hotel.is_empty());
        let phone_components: BTreeSet<_> = phone
            .iter()
            .filter(|(_, r)| *r == EntityRole::ComponentFeature)
            .map(|(s, _)| s.clone())
            .collect();
        for (surface, role) in &hotel {
            if *role == EntityRole::ComponentFeature {
                assert!(
                    !phone_components.contains(surface),
                    "{surface} leaks across branches"
                );
            }
        }
    }

    #[test]
    fn unknown_category_is_rejected() {
        let o = fixture();
        assert!(matches!(
            o.entities_for_product("toaster"),
            Err(OntologyError::UnknownCategory(_))
        ));
        assert!(matches!(
            o.classify_entity("toaster", "iphone"),
            Err(OntologyError::UnknownCategory(_))
        ));
    }

    #[test]
    fn cycle_is_detected() {
        let text = "class thing parent=-\nclass a parent=b\nclass b parent=a\n";
        assert!(matches!(
            parse_ontology(text),
            Err(OntologyError::CycleDetected { .. })
        ));
    }

    #[test]
    fn unknown_parent_is_detected() {
        let text = "class thing parent=-\nclass a parent=ghost\n";
        assert!(matches!(
            parse_ontology(text),
            Err(OntologyError::UnknownParent { .. })
        ));
    }

    #[test]
    fn duplicate_entity_is_detected() {
        let text = "class thing parent=-\nclass phone parent=thing\nbranch phone class=phone\n\
                    class phone.origin parent=phone role=origin\n\
                    entity sony class=phone.origin\nentity sony class=phone.origin\n";
        assert!(matches!(
            parse_ontology(text),
            Err(OntologyError::DuplicateEntity { .. })
        ));
    }

    #[test]
    fn entity_without_role_is_rejected() {
        let text = "class thing parent=-\nclass phone parent=thing\nbranch phone class=phone\n\
                    entity sony class=phone\n";
        assert!(matches!(
            parse_ontology(text),
            Err(OntologyError::EntityWithoutRole { .. })
        ));
    }

    #[test]
    fn root_must_be_thing() {
        let err = parse_ontology("class gadget parent=-\n").unwrap_err();
        assert!(matches!(err, OntologyError::Validation { .. }));
        let err = parse_ontology("class thing parent=-\nclass other parent=-\n").unwrap_err();
        assert!(matches!(err, OntologyError::Validation { .. }));
    }

    #[test]
    fn syntax_errors_carry_line_numbers() {
        let err = parse_ontology("class thing parent=-\nwidget x y\n").unwrap_err();
        match err {
            OntologyError::Syntax { line, .. } => assert_eq!(line, 2),
            other => panic!("expected syntax error, got {other:?}"),
        }
        assert!(matches!(
            parse_ontology("class thing parent=- color=red\n"),
            Err(OntologyError::Syntax { .. })
        ));
        assert!(matches!(
            parse_ontology("class thing parent=-\nclass p parent=thing role=brandish\n"),
            Err(OntologyError::Syntax { .. })
        ));
    }

    #[test]
    fn identifiers_and_surfaces_are_case_folded() {
        let text = "class Thing parent=-\nclass Phone parent=THING\nbranch PHONE class=phone\n\
                    class phone.origin parent=phone role=ORIGIN\n\
                    entity \"  SONY  \" class=phone.origin\n";
        let o = parse_ontology(text).unwrap();
        assert_eq!(
            o.classify_entity("Phone", "sony").unwrap(),
            EntityRole::Origin
        );
    }

    #[test]
    fn round_trip_is_a_fixpoint() {
        let first = fixture();
        let serialized = serialize_ontology(&first);
        let second = parse_ontology(&serialized).expect("serialized ontology reloads");
        assert_eq!(first, second);
        assert_eq!(serialized, serialize_ontology(&second));
    }

    #[test]
    fn quoting_is_required_exactly_for_spaced_surfaces() {
        let o = fixture();
        let serialized = serialize_ontology(&o);
        assert!(serialized.contains("entity \"sim card\" class=phone.component"));
        assert!(serialized.contains("entity sony class=phone.origin"));
        // Unquoted multi-word surfaces do not parse as a single entity.
        let bad = "class thing parent=-\nclass phone parent=thing\nbranch phone class=phone\n\
                   class phone.component parent=phone role=component\n\
                   entity sim card class=phone.component\n";
        assert!(matches!(
            parse_ontology(bad),
            Err(OntologyError::Syntax { .. })
        ));
    }

    #[test]
    fn missing_file_error() {
        assert!(matches!(
            load_ontology("/nonexistent/path.ont"),
            Err(OntologyError::MissingFile { .. })
        ));
    }
}
