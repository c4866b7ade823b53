//! Helpers shared by the integration test binaries.
#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::Command;

/// Review texts reused across the worked-example tests. They match the
/// shipped `fixtures/reviews/` files byte for byte.
pub const SHERATON: &str = "I stayed at the Sheraton Chicago Hotel for two nights and I \
    must say the service they rendered was quite impressive. They had very attentive and \
    friendly staff members. The room that I stayed in was spacious for me and my husband. Their \
    hotel restaurant served the most delicious steaks I have tasted, I ordered a classic fillet \
    mignon and it was cooked to perfection. I would definitely stay at this hotel again if ever \
    I come back to Chicago and would absolutely highly recommend this to my friends and family.";

pub const MACBOOK: &str = "And the mac is also a better built computer. I was talking to \
    a guy the other day and his MacBook pro was stolen and then people who stole it smashed it \
    and ran it over and apple employee found it and returned it to him and the data was \
    recovered but the screen was ruined.";

pub const SAMSUNG: &str = "Samsung is the world's leader in screens(Sony is a part of \
    them) the next Samsung is obviously going to have a better screen, they are already in the \
    process of making one that is unmatched in the mobile world....apple does not make their \
    own hardware";

/// Absolute path to a file under `fixtures/`.
pub fn fixture(relative: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(relative)
}

/// A command invoking the compiled `opspam` binary.
pub fn opspam() -> Command {
    Command::new(env!("CARGO_BIN_EXE_opspam"))
}
