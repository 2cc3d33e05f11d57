use std::fmt;

use crate::error::{Error, Result};

/// Largest group order the whitelist admits; every element and the full
/// multiplication table are stored.
pub const MAX_ORDER: u64 = 1152;

/// An irreducible factor of a diagram.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CoxeterType {
    A(usize),
    B(usize),
    D(usize),
    H(usize),
    I2(u32),
}

impl CoxeterType {
    pub fn rank(self) -> usize {
        match self {
            CoxeterType::A(n) | CoxeterType::B(n) | CoxeterType::D(n) | CoxeterType::H(n) => n,
            CoxeterType::I2(_) => 2,
        }
    }

    pub fn order(self) -> u64 {
        let fact = |n: usize| (1..=n as u64).product::<u64>();
        match self {
            CoxeterType::A(n) => fact(n + 1),
            CoxeterType::B(n) => (1u64 << n) * fact(n),
            CoxeterType::D(n) => (1u64 << (n - 1)) * fact(n),
            CoxeterType::H(3) => 120,
            CoxeterType::H(_) => 14400,
            CoxeterType::I2(m) => 2 * m as u64,
        }
    }

    /// Coxeter matrix with generators numbered as in the module docs.
    fn matrix(self) -> Vec<Vec<u32>> {
        let n = self.rank();
        let mut m = vec![vec![2u32; n]; n];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 1;
        }
        let mut set = |a: usize, b: usize, v: u32| {
            m[a][b] = v;
            m[b][a] = v;
        };
        match self {
            CoxeterType::A(n) => (1..n).for_each(|i| set(i - 1, i, 3)),
            CoxeterType::B(n) => {
                set(0, 1, 4);
                (2..n).for_each(|i| set(i - 1, i, 3));
            }
            CoxeterType::D(n) => {
                set(0, 1, 3);
                set(1, 2, 3);
                set(1, 3, 3);
                (4..n).for_each(|i| set(i - 1, i, 3));
            }
            CoxeterType::H(n) => {
                set(0, 1, 5);
                (2..n).for_each(|i| set(i - 1, i, 3));
            }
            CoxeterType::I2(m) => set(0, 1, m),
        }
        m
    }

    fn parse(s: &str) -> Result<Self> {
        let bad = || {
            Error::UnsupportedDiagram(format!(
                "{s} is not in the supported list (A1-A5, B2-B4, D4, H3, I2(m) for 3 <= m <= 12)"
            ))
        };
        if let Some(rest) = s.strip_prefix("I2(").and_then(|r| r.strip_suffix(')')) {
            let m: u32 = rest.parse().map_err(|_| bad())?;
            return if (3..=12).contains(&m) { Ok(CoxeterType::I2(m)) } else { Err(bad()) };
        }
        let (head, tail) = s.split_at(s.char_indices().nth(1).map_or(s.len(), |(i, _)| i));
        let n: usize = tail.parse().map_err(|_| bad())?;
        let t = match head {
            "A" if (1..=5).contains(&n) => CoxeterType::A(n),
            "B" if (2..=4).contains(&n) => CoxeterType::B(n),
            "D" if n == 4 => CoxeterType::D(n),
            "H" if n == 3 => CoxeterType::H(n),
            _ => return Err(bad()),
        };
        Ok(t)
    }
}

impl fmt::Display for CoxeterType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoxeterType::A(n) => write!(f, "A{n}"),
            CoxeterType::B(n) => write!(f, "B{n}"),
            CoxeterType::D(n) => write!(f, "D{n}"),
            CoxeterType::H(n) => write!(f, "H{n}"),
            CoxeterType::I2(m) => write!(f, "I2({m})"),
        }
    }
}

/// A Coxeter diagram of finite type, possibly reducible.
///
/// Generators are numbered `0..rank`, factor by factor. Within a factor:
/// `A_n` is the path `0-1-…`; `B_n` has `m(0,1) = 4` followed by a path, so
/// `{1, …, n-1}` is of type `A`; `D4` has central node `1`; `H3` has
/// `m(0,1) = 5`, `m(1,2) = 3`; `I2(m)` has `m(0,1) = m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagram {
    pub label: String,
    pub factors: Vec<CoxeterType>,
    pub matrix: Vec<Vec<u32>>,
}

impl Diagram {
    pub fn parse(label: &str) -> Result<Self> {
        let label = label.trim();
        if label.is_empty() {
            return Err(Error::UnsupportedDiagram("empty diagram".into()));
        }
        let factors = label.split('x').map(CoxeterType::parse).collect::<Result<Vec<_>>>()?;
        let order: u64 = factors.iter().map(|t| t.order()).product();
        if order > MAX_ORDER {
            return Err(Error::UnsupportedDiagram(format!("{label} has order {order}, above the limit {MAX_ORDER}")));
        }
        let rank: usize = factors.iter().map(|t| t.rank()).sum();
        let mut matrix = vec![vec![2u32; rank]; rank];
        let mut off = 0;
        for t in &factors {
            let m = t.matrix();
            for (i, row) in m.iter().enumerate() {
                for (j, &v) in row.iter().enumerate() {
                    matrix[off + i][off + j] = v;
                }
            }
            off += t.rank();
        }
        let label = factors.iter().map(|t| t.to_string()).collect::<Vec<_>>().join("x");
        Ok(Diagram { label, factors, matrix })
    }

    pub fn rank(&self) -> usize {
        self.matrix.len()
    }

    pub fn order(&self) -> u64 {
        self.factors.iter().map(|t| t.order()).product()
    }

    /// Generator masks of the irreducible factors.
    pub fn factor_masks(&self) -> Vec<u32> {
        let mut off = 0;
        self.factors
            .iter()
            .map(|t| {
                let m = ((1u32 << t.rank()) - 1) << off;
                off += t.rank();
                m
            })
            .collect()
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_whitelist() {
        for s in ["A1", "A5", "B2", "B4", "D4", "H3", "I2(7)", "I2(12)", "A2xA1"] {
            assert!(Diagram::parse(s).is_ok(), "{s}");
        }
        let d = Diagram::parse("B3").unwrap();
        assert_eq!(d.matrix[0][1], 4);
        assert_eq!(d.matrix[1][2], 3);
        assert_eq!(d.matrix[0][2], 2);
        let d4 = Diagram::parse("D4").unwrap();
        assert_eq!((d4.matrix[1][0], d4.matrix[1][2], d4.matrix[1][3]), (3, 3, 3));
        assert_eq!(d4.matrix[0][2], 2);
    }

    #[test]
    fn rejects_with_diagnostic() {
        for s in ["E6", "A6", "B5", "D5", "H4", "I2(13)", "I2(2)", "F4", "", "A2xQ3"] {
            let e = Diagram::parse(s).unwrap_err();
            assert!(matches!(e, Error::UnsupportedDiagram(_)), "{s}");
        }
        let msg = Diagram::parse("A2xE6").unwrap_err().to_string();
        assert!(msg.contains("E6"));
        assert!(Diagram::parse("A5xA1").is_err());
    }

    #[test]
    fn product_layout() {
        let d = Diagram::parse("A2xA1").unwrap();
        assert_eq!(d.rank(), 3);
        assert_eq!(d.factor_masks(), vec![0b011, 0b100]);
        assert_eq!(d.matrix[1][2], 2);
        assert_eq!(d.order(), 12);
    }
}
