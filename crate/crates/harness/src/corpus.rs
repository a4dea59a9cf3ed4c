//! The bundled symbol corpus.

use crate::symbol::{LabeledPair, SymbolFile};
use crate::HarnessError;

/// File name and contents of every bundled symbol document.
pub const CORPUS: [(&str, &str); 22] = [
    ("01-identity.json", include_str!("../corpus/01-identity.json")),
    ("02-half-identity.json", include_str!("../corpus/02-half-identity.json")),
    (
        "03-weighted-identity.json",
        include_str!("../corpus/03-weighted-identity.json"),
    ),
    (
        "04-vanishing-weight-identity.json",
        include_str!("../corpus/04-vanishing-weight-identity.json"),
    ),
    ("05-zero-weight.json", include_str!("../corpus/05-zero-weight.json")),
    ("06-horocyclic.json", include_str!("../corpus/06-horocyclic.json")),
    (
        "07-horocyclic-vanishing-weight.json",
        include_str!("../corpus/07-horocyclic-vanishing-weight.json"),
    ),
    (
        "08-horocyclic-weight-z.json",
        include_str!("../corpus/08-horocyclic-weight-z.json"),
    ),
    ("09-lens.json", include_str!("../corpus/09-lens.json")),
    (
        "10-lens-vanishing-weight.json",
        include_str!("../corpus/10-lens-vanishing-weight.json"),
    ),
    ("11-square.json", include_str!("../corpus/11-square.json")),
    (
        "12-square-weight-z.json",
        include_str!("../corpus/12-square-weight-z.json"),
    ),
    ("13-automorphism.json", include_str!("../corpus/13-automorphism.json")),
    (
        "14-conjugated-square.json",
        include_str!("../corpus/14-conjugated-square.json"),
    ),
    (
        "15-conjugated-half.json",
        include_str!("../corpus/15-conjugated-half.json"),
    ),
    (
        "16-strict-quadratic.json",
        include_str!("../corpus/16-strict-quadratic.json"),
    ),
    ("17-strict-cubic.json", include_str!("../corpus/17-strict-cubic.json")),
    ("18-strict-affine.json", include_str!("../corpus/18-strict-affine.json")),
    ("19-even-contact.json", include_str!("../corpus/19-even-contact.json")),
    ("20-exp-weight.json", include_str!("../corpus/20-exp-weight.json")),
    (
        "21-product-weight.json",
        include_str!("../corpus/21-product-weight.json"),
    ),
    ("22-scaled-strict.json", include_str!("../corpus/22-scaled-strict.json")),
];

/// Parses and validates the bundled corpus, in file order.
pub fn corpus() -> Result<Vec<LabeledPair>, HarnessError> {
    CORPUS
        .iter()
        .map(|(name, text)| SymbolFile::parse_str(text)?.into_pair(name.trim_end_matches(".json")))
        .collect()
}
