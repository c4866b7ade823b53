//! Deterministic synthetic test world: a four-branch product ontology and a
//! labeled review corpus generator with one template per label.
//!
//! The templates are engineered with wide margins: at the default thresholds
//! every generated review is classified with its gold label, which makes the
//! corpus a stable target for evaluation and tuning tests.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::ontology::{parse_ontology, Ontology};
use crate::preprocess::{Label, Review};

/// Made-up model-name suffixes; none appear in the fixture lexicons.
const SUFFIXES: [&str; 32] = [
    "axa", "bexa", "cora", "dima", "eron", "fyra", "gela", "hesta", "irix", "jona", "kyra", "lumo",
    "mira", "nexo", "oris", "pava", "qella", "ruva", "sila", "tavo", "usko", "vela", "wyna",
    "xori", "yuva", "zede", "arlo", "brivo", "celso", "drana", "elvo", "frena",
];

struct BranchSpec {
    category: &'static str,
    token: &'static str,
    name_base: Option<&'static str>,
    component_subs: usize,
    style_subs: Option<usize>,
    origin_subs: Option<usize>,
    popular_subs: Option<usize>,
    components: usize,
    styles: usize,
    origins: usize,
    popular: usize,
}

const BRANCHES: [BranchSpec; 4] = [
    BranchSpec {
        category: "phone",
        token: "fono",
        name_base: Some("apexfone"),
        component_subs: 10,
        style_subs: Some(3),
        origin_subs: Some(3),
        popular_subs: Some(4),
        components: 120,
        styles: 30,
        origins: 30,
        popular: 31,
    },
    BranchSpec {
        category: "camera",
        token: "cami",
        name_base: Some("zorblens"),
        component_subs: 1,
        style_subs: Some(1),
        origin_subs: Some(0),
        popular_subs: Some(0),
        components: 50,
        styles: 15,
        origins: 15,
        popular: 15,
    },
    BranchSpec {
        category: "laptop",
        token: "lapi",
        name_base: Some("lumibook"),
        component_subs: 11,
        style_subs: Some(3),
        origin_subs: Some(3),
        popular_subs: Some(4),
        components: 100,
        styles: 30,
        origins: 25,
        popular: 26,
    },
    BranchSpec {
        category: "hotel",
        token: "inn",
        name_base: None,
        component_subs: 0,
        style_subs: None,
        origin_subs: Some(0),
        popular_subs: None,
        components: 60,
        styles: 0,
        origins: 21,
        popular: 0,
    },
];

struct BranchPools {
    category: &'static str,
    components: Vec<String>,
    origins: Vec<String>,
    popular: Vec<String>,
}

impl BranchSpec {
    fn component_surfaces(&self) -> Vec<String> {
        (0..self.components)
            .map(|i| format!("{}part{i:03}", self.token))
            .collect()
    }

    fn style_surfaces(&self) -> Vec<String> {
        (0..self.styles)
            .map(|i| format!("{}style{i:02}", self.token))
            .collect()
    }

    fn origin_surfaces(&self) -> Vec<String> {
        (0..self.origins)
            .map(|i| format!("{}brand{i:02}", self.token))
            .collect()
    }

    fn popular_surfaces(&self) -> Vec<String> {
        let base = match self.name_base {
            Some(base) => base,
            None => return Vec::new(),
        };
        (0..self.popular)
            .map(|i| format!("{base} {}", SUFFIXES[i % SUFFIXES.len()]))
            .collect()
    }
}

fn pools() -> Vec<BranchPools> {
    BRANCHES
        .iter()
        .map(|spec| BranchPools {
            category: spec.category,
            components: spec.component_surfaces(),
            origins: spec.origin_surfaces(),
            popular: spec.popular_surfaces(),
        })
        .collect()
}

fn push_role(lines: &mut Vec<String>, branch: &str, role: &str, subs: usize, surfaces: &[String]) {
    let role_class = format!("{branch}.{role}");
    lines.push(format!("class {role_class} parent={branch} role={role}"));
    let mut classes = vec![role_class.clone()];
    for i in 0..subs {
        let sub = format!("{role_class}.s{i:02}");
        lines.push(format!("class {sub} parent={role_class}"));
        classes.push(sub);
    }
    for (i, surface) in surfaces.iter().enumerate() {
        let class = &classes[i % classes.len()];
        let quoted = if surface.contains(' ') {
            format!("\"{surface}\"")
        } else {
            surface.clone()
        };
        lines.push(format!("entity {quoted} class={class}"));
    }
}

fn synthetic_ontology_text() -> String {
    let mut lines = vec![
        "# Synthetic four-branch product ontology.".to_string(),
        "class thing parent=-".to_string(),
        "class eproduct parent=thing".to_string(),
    ];
    for spec in &BRANCHES {
        let branch = spec.category;
        lines.push(format!("class {branch} parent=eproduct"));
        lines.push(format!("branch {branch} class={branch}"));
        push_role(
            &mut lines,
            branch,
            "component",
            spec.component_subs,
            &spec.component_surfaces(),
        );
        if let Some(subs) = spec.style_subs {
            push_role(&mut lines, branch, "style", subs, &spec.style_surfaces());
        }
        if let Some(subs) = spec.origin_subs {
            push_role(&mut lines, branch, "origin", subs, &spec.origin_surfaces());
        }
        if let Some(subs) = spec.popular_subs {
            push_role(
                &mut lines,
                branch,
                "popularname",
                subs,
                &spec.popular_surfaces(),
            );
        }
    }
    let mut text = lines.join("\n");
    text.push('\n');
    text
}

/// Build the synthetic ontology: 63 classes, 568 entities, four branches.
pub fn synthetic_ontology() -> Ontology {
    parse_ontology(&synthetic_ontology_text()).expect("generated ontology is valid")
}

fn capitalize(word: &str) -> String {
    let mut chars = word.chars();
    match chars.next() {
        Some(first) => first.to_uppercase().collect::<String>() + chars.as_str(),
        None => String::new(),
    }
}

fn pick<'a>(rng: &mut ChaCha8Rng, pool: &'a [String]) -> &'a str {
    &pool[rng.gen_range(0..pool.len())]
}

/// Pick `n` distinct surfaces starting at a random offset.
fn pick_distinct<'a>(rng: &mut ChaCha8Rng, pool: &'a [String], n: usize) -> Vec<&'a str> {
    let start = rng.gen_range(0..pool.len());
    (0..n)
        .map(|k| pool[(start + k) % pool.len()].as_str())
        .collect()
}

fn product_name(rng: &mut ChaCha8Rng, pool: &BranchPools) -> String {
    if pool.popular.is_empty() {
        format!("grandstay {}", SUFFIXES[rng.gen_range(0..SUFFIXES.len())])
    } else {
        pick(rng, &pool.popular).to_string()
    }
}

fn non_review_text(i: usize) -> String {
    format!(
        "Visit https://deals{i}.example.org for the lowest prices. Limited time offer, \
         call 555-0{}00 today. Buy now at www.bargain{i}.example.net.",
        i % 10
    )
}

fn brand_only_text(rng: &mut ChaCha8Rng, pool: &BranchPools) -> String {
    let origins = pick_distinct(rng, &pool.origins, 4);
    format!(
        "{} is a good company and {} is a good supplier. {} works with {} on every product line.",
        capitalize(origins[0]),
        origins[1],
        origins[2],
        origins[3]
    )
}

fn off_topic_text(rng: &mut ChaCha8Rng, foreign: &BranchPools) -> String {
    let name = pick(rng, &foreign.popular);
    let parts = pick_distinct(rng, &foreign.components, 2);
    let origin = pick(rng, &foreign.origins);
    format!(
        "I keep thinking about {name} instead. The {} and {} of {name} beat anything here, \
         and {origin} makes a good case and a nice pitch.",
        parts[0], parts[1]
    )
}

fn untruthful_text(name: &str) -> String {
    let shouted = name.to_uppercase();
    format!(
        "{shouted} is absolutely wonderful and totally perfect. I love {name} and the great \
         feel of it. Everyone must buy {shouted} today, definitely the most amazing thing ever."
    )
}

fn truthful_text(rng: &mut ChaCha8Rng, pool: &BranchPools, name: &str) -> String {
    let parts = pick_distinct(rng, &pool.components, 4);
    let origin = pick(rng, &pool.origins);
    format!(
        "The {} on my {name} is great and the {} feels solid. The {} seemed weak after a week \
         and the {} is slow to respond. {} support was nice overall. I would keep it for now.",
        parts[0],
        parts[1],
        parts[2],
        parts[3],
        capitalize(origin)
    )
}

/// Generate a labeled corpus: `spam_per_type` reviews for each of the four
/// spam types followed by `truthful` truthful reviews, deterministically from
/// `seed`. All reviews target the synthetic ontology's categories.
pub fn synthetic_corpus(spam_per_type: usize, truthful: usize, seed: u64) -> Vec<Review> {
    let pools = pools();
    let by_category = |category: &str| {
        pools
            .iter()
            .find(|p| p.category == category)
            .expect("known category")
    };
    let spam_cycle = ["phone", "laptop", "hotel"];
    let brand_cycle = ["phone", "hotel"];
    let foreign_of = |category: &str| match category {
        "phone" => "laptop",
        "laptop" => "camera",
        _ => "phone",
    };

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut reviews = Vec::with_capacity(spam_per_type * 4 + truthful);

    for i in 0..spam_per_type {
        let pool = by_category(spam_cycle[i % spam_cycle.len()]);
        let name = product_name(&mut rng, pool);
        reviews.push(
            Review::new(
                pool.category,
                name,
                non_review_text(i),
                Some(Label::NonReview),
            )
            .expect("template is valid"),
        );
    }
    for i in 0..spam_per_type {
        let pool = by_category(brand_cycle[i % brand_cycle.len()]);
        let name = product_name(&mut rng, pool);
        let text = brand_only_text(&mut rng, pool);
        reviews.push(
            Review::new(pool.category, name, text, Some(Label::BrandOnly))
                .expect("template is valid"),
        );
    }
    for i in 0..spam_per_type {
        let pool = by_category(spam_cycle[i % spam_cycle.len()]);
        let foreign = by_category(foreign_of(pool.category));
        let name = product_name(&mut rng, pool);
        let text = off_topic_text(&mut rng, foreign);
        reviews.push(
            Review::new(pool.category, name, text, Some(Label::OffTopic))
                .expect("template is valid"),
        );
    }
    for i in 0..spam_per_type {
        let pool = by_category(spam_cycle[i % spam_cycle.len()]);
        let name = product_name(&mut rng, pool);
        let text = untruthful_text(&name);
        reviews.push(
            Review::new(pool.category, name, text, Some(Label::Untruthful))
                .expect("template is valid"),
        );
    }
    for i in 0..truthful {
        let pool = by_category(spam_cycle[i % spam_cycle.len()]);
        let name = product_name(&mut rng, pool);
        let text = truthful_text(&mut rng, pool, &name);
        reviews.push(
            Review::new(pool.category, name, text, Some(Label::Truthful))
                .expect("template is valid"),
        );
    }
    reviews
}
