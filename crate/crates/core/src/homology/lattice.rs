use std::fmt;

use crate::error::{Error, Result};

/// An integer homology class, as a coordinate vector in a fixed basis.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct HomClass(pub Vec<i64>);

/// A class in homology with ℤ₂ coefficients; entries are 0 or 1.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Z2Class(pub Vec<u8>);

impl HomClass {
    pub fn zero(rank: usize) -> Self {
        HomClass(vec![0; rank])
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn add(&self, other: &HomClass) -> HomClass {
        HomClass(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &HomClass) -> HomClass {
        HomClass(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: i64) -> HomClass {
        HomClass(self.0.iter().map(|a| a * k).collect())
    }

    pub fn neg(&self) -> HomClass {
        self.scale(-1)
    }

    pub fn mod2(&self) -> Z2Class {
        Z2Class(self.0.iter().map(|a| a.rem_euclid(2) as u8).collect())
    }

    /// The 0/1 lift of this class's reduction mod 2.
    pub fn canonical_lift(&self) -> HomClass {
        self.mod2().lift()
    }
}

impl Z2Class {
    pub fn zero(rank: usize) -> Self {
        Z2Class(vec![0; rank])
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn add(&self, other: &Z2Class) -> Z2Class {
        Z2Class(self.0.iter().zip(&other.0).map(|(a, b)| a ^ b).collect())
    }

    pub fn lift(&self) -> HomClass {
        HomClass(self.0.iter().map(|&b| b as i64).collect())
    }
}

impl From<Vec<i64>> for HomClass {
    fn from(v: Vec<i64>) -> Self {
        HomClass(v)
    }
}

impl fmt::Debug for HomClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl fmt::Display for HomClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

impl fmt::Debug for Z2Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// A free abelian group of finite rank with an antisymmetric integer form.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Lattice {
    rank: usize,
    form: Vec<Vec<i64>>,
}

impl Lattice {
    pub fn new(form: Vec<Vec<i64>>) -> Result<Self> {
        let rank = form.len();
        for (i, row) in form.iter().enumerate() {
            if row.len() != rank {
                return Err(Error::DimensionMismatch { expected: rank, got: row.len() });
            }
            for j in 0..rank {
                if row[j] != -form[j][i] {
                    return Err(Error::input(
                        format!("form[{i}][{j}]"),
                        "intersection form must be antisymmetric",
                    ));
                }
            }
        }
        Ok(Lattice { rank, form })
    }

    /// Standard symplectic lattice of a genus-g surface: ω(e_{2k-1}, e_{2k}) = +1.
    pub fn symplectic(genus: usize) -> Self {
        let rank = 2 * genus;
        let mut form = vec![vec![0; rank]; rank];
        for k in 0..genus {
            form[2 * k][2 * k + 1] = 1;
            form[2 * k + 1][2 * k] = -1;
        }
        Lattice { rank, form }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn form(&self) -> &[Vec<i64>] {
        &self.form
    }

    pub fn check(&self, c: &HomClass) -> Result<()> {
        if c.rank() != self.rank {
            return Err(Error::DimensionMismatch { expected: self.rank, got: c.rank() });
        }
        Ok(())
    }

    /// Algebraic intersection number ω(a, b) = aᵀ·form·b.
    pub fn omega(&self, a: &HomClass, b: &HomClass) -> Result<i64> {
        self.check(a)?;
        self.check(b)?;
        let mut acc = 0;
        for i in 0..self.rank {
            if a.0[i] == 0 {
                continue;
            }
            for j in 0..self.rank {
                acc += a.0[i] * self.form[i][j] * b.0[j];
            }
        }
        Ok(acc)
    }
}
