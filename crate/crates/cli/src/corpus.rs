//! Derivation scripts bundled into the binary.

pub const CORPUS: [(&str, &str); 5] = [
    ("katayamahiko-ohara", include_str!("../corpus/katayamahiko-ohara.tzn")),
    (
        "katayamahiko-corrected",
        include_str!("../corpus/katayamahiko-corrected.tzn"),
    ),
    ("katayamahiko-modern", include_str!("../corpus/katayamahiko-modern.tzn")),
    (
        "katayamahiko-traditional",
        include_str!("../corpus/katayamahiko-traditional.tzn"),
    ),
    ("rule-examples", include_str!("../corpus/rule-examples.tzn")),
];

pub const PREFIX: &str = "corpus:";

pub fn lookup(name: &str) -> Option<&'static str> {
    CORPUS.iter().find(|(n, _)| *n == name).map(|(_, text)| *text)
}

pub fn names() -> impl Iterator<Item = &'static str> {
    CORPUS.iter().map(|(n, _)| *n)
}
