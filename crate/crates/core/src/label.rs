//! Fixed-width bit-string vertex labels.
//!
//! A label `u = u_1 u_2 ... u_w` is rendered with `u_1` first; internally the
//! bits live in a `u32` with position 1 at the most significant used slot, so
//! lexicographic order on bit strings coincides with numeric order on equal
//! widths.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Maximum supported label width in bits.
pub const MAX_WIDTH: u8 = 31;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LabelError {
    #[error("label width {0} out of range 1..={MAX_WIDTH}")]
    BadWidth(u8),
    #[error("bit pattern {bits:#b} does not fit in width {width}")]
    Overflow { bits: u32, width: u8 },
    #[error("invalid label string {0:?}: expected only '0' and '1'")]
    BadChar(String),
}

/// A vertex label: `width` bits, positions indexed `1..=width` from the left.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Label {
    width: u8,
    bits: u32,
}

impl Label {
    pub fn new(bits: u32, width: u8) -> Result<Self, LabelError> {
        if width == 0 || width > MAX_WIDTH {
            return Err(LabelError::BadWidth(width));
        }
        if bits >> width != 0 {
            return Err(LabelError::Overflow { bits, width });
        }
        Ok(Label { width, bits })
    }

    /// The all-zero label of the given width.
    pub fn zero(width: u8) -> Self {
        assert!((1..=MAX_WIDTH).contains(&width));
        Label { width, bits: 0 }
    }

    pub fn width(&self) -> u8 {
        self.width
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    /// Bit at `pos` (1 = leftmost).
    pub fn bit(&self, pos: u8) -> u8 {
        debug_assert!(pos >= 1 && pos <= self.width);
        ((self.bits >> (self.width - pos)) & 1) as u8
    }

    /// Copy with the bit at `pos` flipped.
    pub fn flip(&self, pos: u8) -> Self {
        debug_assert!(pos >= 1 && pos <= self.width);
        Label {
            width: self.width,
            bits: self.bits ^ (1 << (self.width - pos)),
        }
    }

    /// The sub-label covering positions `from..=to` (inclusive, 1-based).
    pub fn slice(&self, from: u8, to: u8) -> Label {
        debug_assert!(from >= 1 && from <= to && to <= self.width);
        let len = to - from + 1;
        let shifted = self.bits >> (self.width - to);
        Label {
            width: len,
            bits: shifted & ((1 << len) - 1),
        }
    }

    /// Concatenation `self ++ tail`.
    pub fn concat(&self, tail: Label) -> Label {
        let width = self.width + tail.width;
        assert!(width <= MAX_WIDTH);
        Label {
            width,
            bits: (self.bits << tail.width) | tail.bits,
        }
    }

    /// Append a single bit on the right.
    pub fn push_bit(&self, bit: u8) -> Label {
        debug_assert!(bit <= 1);
        let width = self.width + 1;
        assert!(width <= MAX_WIDTH);
        Label {
            width,
            bits: (self.bits << 1) | u32::from(bit),
        }
    }

    /// Number of ones; parity gives the bipartition class.
    pub fn popcount(&self) -> u32 {
        self.bits.count_ones()
    }

    /// All labels of the given width in lexicographic order.
    pub fn all(width: u8) -> impl Iterator<Item = Label> {
        assert!((1..=MAX_WIDTH).contains(&width));
        (0u32..(1 << width)).map(move |bits| Label { width, bits })
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for pos in 1..=self.width {
            write!(f, "{}", self.bit(pos))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Label {
    type Err = LabelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let width = s.len();
        if width == 0 || width > MAX_WIDTH as usize {
            return Err(LabelError::BadWidth(width.min(u8::MAX as usize) as u8));
        }
        let mut bits = 0u32;
        for c in s.chars() {
            bits = (bits << 1)
                | match c {
                    '0' => 0,
                    '1' => 1,
                    _ => return Err(LabelError::BadChar(s.to_string())),
                };
        }
        Ok(Label {
            width: width as u8,
            bits,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_and_order() {
        let l: Label = "01100".parse().unwrap();
        assert_eq!(l.width(), 5);
        assert_eq!(l.to_string(), "01100");
        assert_eq!(l.bit(1), 0);
        assert_eq!(l.bit(2), 1);
        assert_eq!(l.bit(5), 0);
        // lexicographic order matches numeric order
        let a: Label = "00111".parse().unwrap();
        assert!(a < l);
    }

    #[test]
    fn flip_and_slice() {
        let l: Label = "01100".parse().unwrap();
        assert_eq!(l.flip(5).to_string(), "01101");
        assert_eq!(l.flip(1).to_string(), "11100");
        assert_eq!(l.slice(3, 4).to_string(), "10");
        assert_eq!(l.slice(1, 2).to_string(), "01");
    }

    #[test]
    fn concat() {
        let a: Label = "01".parse().unwrap();
        let b: Label = "10".parse().unwrap();
        assert_eq!(a.concat(b).push_bit(0).to_string(), "01100");
    }

    #[test]
    fn equal_needs_same_width() {
        let a: Label = "010".parse().unwrap();
        let b: Label = "0010".parse().unwrap();
        assert_ne!(a, b);
    }

    #[test]
    fn rejects_garbage() {
        assert!("01x0".parse::<Label>().is_err());
        assert!("".parse::<Label>().is_err());
        assert!(Label::new(8, 3).is_err());
        assert!(Label::new(0, 0).is_err());
    }
}
