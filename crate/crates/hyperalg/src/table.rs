//! Cayley tables over the basis (1, i, j, k).
//!
//! A table entry is always a *signed basis element* (e.g. `-k`), so a 4x4
//! table of such entries fully determines a 4-dimensional algebra by
//! bilinear extension. The built-in tables are the quaternions H and the
//! bicomplex algebra Omega with subalgebras psi = span(1, i) and
//! Phi = span(j, k).

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::CoreError;

/// Names of the four basis elements, in index order.
pub const BASIS_NAMES: [&str; 4] = ["1", "i", "j", "k"];

/// Basis indices for readability.
pub const B_ONE: usize = 0;
pub const B_I: usize = 1;
pub const B_J: usize = 2;
pub const B_K: usize = 3;

/// A basis element with a sign, e.g. `-k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedBasis {
    /// +1 or -1.
    pub sign: i8,
    /// Index into (1, i, j, k).
    pub basis: usize,
}

impl SignedBasis {
    pub fn new(sign: i8, basis: usize) -> Self {
        assert!(sign == 1 || sign == -1, "sign must be +1 or -1");
        assert!(basis < 4, "basis index must be in 0..4");
        SignedBasis { sign, basis }
    }

    pub fn pos(basis: usize) -> Self {
        Self::new(1, basis)
    }

    pub fn neg(basis: usize) -> Self {
        Self::new(-1, basis)
    }

    pub fn negate(self) -> Self {
        SignedBasis { sign: -self.sign, basis: self.basis }
    }

    /// Dense code in 0..8, ordered (1, -1, i, -i, j, -j, k, -k).
    /// Used for lexicographic table comparison and enumeration.
    pub fn code(self) -> u8 {
        (self.basis as u8) * 2 + if self.sign < 0 { 1 } else { 0 }
    }

    pub fn from_code(code: u8) -> Self {
        assert!(code < 8);
        SignedBasis {
            sign: if code % 2 == 0 { 1 } else { -1 },
            basis: (code / 2) as usize,
        }
    }

    pub fn parse(s: &str) -> Result<Self, CoreError> {
        let (sign, rest) = match s.strip_prefix('-') {
            Some(rest) => (-1, rest),
            None => (1, s),
        };
        let basis = BASIS_NAMES
            .iter()
            .position(|&n| n == rest)
            .ok_or_else(|| CoreError::BadTableEntry(s.to_string()))?;
        Ok(SignedBasis { sign, basis })
    }
}

impl fmt::Display for SignedBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sign < 0 {
            write!(f, "-{}", BASIS_NAMES[self.basis])
        } else {
            write!(f, "{}", BASIS_NAMES[self.basis])
        }
    }
}

/// A 4x4 Cayley table: `entries[a][b]` is the product of basis elements
/// a and b.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiplicationTable {
    pub name: String,
    pub entries: [[SignedBasis; 4]; 4],
}

/// Serialized form of a table: the JSON algebra-definition schema.
#[derive(Serialize, Deserialize)]
pub struct TableFile {
    pub name: String,
    pub table: [[String; 4]; 4],
}

impl MultiplicationTable {
    /// Builds a table from entry strings and verifies unitality.
    pub fn from_strs(name: &str, rows: [[&str; 4]; 4]) -> Result<Self, CoreError> {
        let mut entries = [[SignedBasis::pos(0); 4]; 4];
        for (a, row) in rows.iter().enumerate() {
            for (b, s) in row.iter().enumerate() {
                entries[a][b] = SignedBasis::parse(s)?;
            }
        }
        let table = MultiplicationTable { name: name.to_string(), entries };
        table.check_unital()?;
        Ok(table)
    }

    /// Builds a table from raw entries without the unitality check.
    /// Used by the enumerator, which fixes the identity row/column itself.
    pub fn from_entries(name: String, entries: [[SignedBasis; 4]; 4]) -> Self {
        MultiplicationTable { name, entries }
    }

    pub fn check_unital(&self) -> Result<(), CoreError> {
        for b in 0..4 {
            if self.entries[0][b] != SignedBasis::pos(b) || self.entries[b][0] != SignedBasis::pos(b) {
                return Err(CoreError::NotUnital(self.name.clone()));
            }
        }
        Ok(())
    }

    pub fn entry(&self, a: usize, b: usize) -> SignedBasis {
        self.entries[a][b]
    }

    /// Flat 16-byte encoding, row-major, for lexicographic comparison.
    pub fn encoding(&self) -> [u8; 16] {
        let mut out = [0u8; 16];
        for a in 0..4 {
            for b in 0..4 {
                out[a * 4 + b] = self.entries[a][b].code();
            }
        }
        out
    }

    pub fn to_strings(&self) -> [[String; 4]; 4] {
        std::array::from_fn(|a| std::array::from_fn(|b| self.entries[a][b].to_string()))
    }

    pub fn from_table_file(file: &TableFile) -> Result<Self, CoreError> {
        let rows: [[&str; 4]; 4] =
            std::array::from_fn(|a| std::array::from_fn(|b| file.table[a][b].as_str()));
        Self::from_strs(&file.name, rows)
    }

    pub fn to_table_file(&self) -> TableFile {
        TableFile { name: self.name.clone(), table: self.to_strings() }
    }

    /// The quaternion table H (Hamilton).
    pub fn quaternion() -> Self {
        Self::from_strs(
            "quaternion",
            [
                ["1", "i", "j", "k"],
                ["i", "-1", "k", "-j"],
                ["j", "-k", "-1", "i"],
                ["k", "j", "-i", "-1"],
            ],
        )
        .expect("built-in quaternion table is valid")
    }

    /// The bicomplex table Omega, stored exactly as printed, including
    /// row j = (j, -k, -k, j) and row k = (k, j, j, k).
    pub fn omega() -> Self {
        Self::from_strs(
            "omega",
            [
                ["1", "i", "j", "k"],
                ["i", "-1", "-k", "j"],
                ["j", "-k", "-k", "j"],
                ["k", "j", "j", "k"],
            ],
        )
        .expect("built-in omega table is valid")
    }
}

impl fmt::Display for MultiplicationTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}:", self.name)?;
        write!(f, "     ")?;
        for b in 0..4 {
            write!(f, "{:>4}", BASIS_NAMES[b])?;
        }
        writeln!(f)?;
        for a in 0..4 {
            write!(f, "{:>4} ", BASIS_NAMES[a])?;
            for b in 0..4 {
                write!(f, "{:>4}", self.entries[a][b].to_string())?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
