//! Shared fixtures for unit tests.

use crate::lexicons::{load_lexicons, LexiconSet};
use crate::ontology::{load_ontology, Ontology};

pub(crate) const SHERATON: &str = "I stayed at the Sheraton Chicago Hotel for two nights and I \
    must say the service they rendered was quite impressive. They had very attentive and \
    friendly staff members. The room that I stayed in was spacious for me and my husband. Their \
    hotel restaurant served the most delicious steaks I have tasted, I ordered a classic fillet \
    mignon and it was cooked to perfection. I would definitely stay at this hotel again if ever \
    I come back to Chicago and would absolutely highly recommend this to my friends and family.";

pub(crate) const MACBOOK: &str = "And the mac is also a better built computer. I was talking to \
    a guy the other day and his MacBook pro was stolen and then people who stole it smashed it \
    and ran it over and apple employee found it and returned it to him and the data was \
    recovered but the screen was ruined.";

pub(crate) const SAMSUNG: &str = "Samsung is the world's leader in screens(Sony is a part of \
    them) the next Samsung is obviously going to have a better screen, they are already in the \
    process of making one that is unmatched in the mobile world....apple does not make their \
    own hardware";

pub(crate) fn fixture_ontology() -> Ontology {
    load_ontology(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/fixtures/phone_hotel.ont"
    ))
    .unwrap()
}

pub(crate) fn fixture_lexicons() -> LexiconSet {
    load_lexicons(concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/lexicons")).unwrap()
}
