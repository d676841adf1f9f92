//! Variable labels.
//!
//! Wasan texts name quantities with the ten calendar stems 甲乙丙丁戊己庚辛壬癸,
//! transcribed here as `a` through `j`. Two further symbols are reserved: the
//! square's diagonal 方斜 (`x`) and an auxiliary unknown `y` that has no stem.

use std::fmt;

use serde::Serialize;

/// Number of distinct labels (ten stems, the diagonal, and the auxiliary `y`).
pub const LABEL_COUNT: usize = 12;

const ASCII: [char; LABEL_COUNT] = ['a', 'b', 'c', 'd', 'e', 'f', 'g', 'h', 'i', 'j', 'x', 'y'];

const KANJI: [&str; LABEL_COUNT] = ["甲", "乙", "丙", "丁", "戊", "己", "庚", "辛", "壬", "癸", "方斜", "y"];

// 甲/庚 and 己/癸 share their on-readings, so the later stem of each pair
// takes its kun-reading to keep the mapping one-to-one.
const ROMANIZED: [&str; LABEL_COUNT] = [
    "ko", "otsu", "hei", "tei", "bo", "ki", "kanoe", "shin", "jin", "mizunoto", "hosha", "y",
];

/// A variable label, indexed 0..=11.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Label(u8);

impl Label {
    pub const A: Label = Label(0);
    pub const B: Label = Label(1);
    pub const C: Label = Label(2);
    pub const D: Label = Label(3);
    pub const X: Label = Label(10);
    pub const Y: Label = Label(11);

    pub fn new(index: usize) -> Option<Label> {
        (index < LABEL_COUNT).then_some(Label(index as u8))
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn all() -> impl Iterator<Item = Label> {
        (0..LABEL_COUNT as u8).map(Label)
    }

    pub fn ascii(self) -> char {
        ASCII[self.index()]
    }

    pub fn kanji(self) -> &'static str {
        KANJI[self.index()]
    }

    pub fn romanized(self) -> &'static str {
        ROMANIZED[self.index()]
    }

    pub fn glyph(self, kanji: bool) -> String {
        if kanji {
            self.kanji().to_string()
        } else {
            self.ascii().to_string()
        }
    }

    pub fn from_ascii(c: char) -> Option<Label> {
        ASCII.iter().position(|&a| a == c).and_then(Label::new)
    }

    pub fn from_kanji(s: &str) -> Option<Label> {
        KANJI.iter().position(|&k| k == s).and_then(Label::new)
    }

    pub fn from_romanized(s: &str) -> Option<Label> {
        ROMANIZED.iter().position(|&r| r == s).and_then(Label::new)
    }

    /// Resolves any of the three spellings: ASCII letter, kanji, or romanized name.
    pub fn lookup(s: &str) -> Option<Label> {
        let mut chars = s.chars();
        if let (Some(c), None) = (chars.next(), chars.next()) {
            if let Some(label) = Label::from_ascii(c) {
                return Some(label);
            }
        }
        Label::from_kanji(s).or_else(|| Label::from_romanized(s))
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.ascii())
    }
}
