use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{qi, qr, Matrix, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Series {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Series {
    pub fn letter(self) -> char {
        match self {
            Series::A => 'A',
            Series::B => 'B',
            Series::C => 'C',
            Series::D => 'D',
            Series::E => 'E',
            Series::F => 'F',
            Series::G => 'G',
        }
    }
}

/// A simple Lie algebra type with Bourbaki node labels.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SimpleLieType {
    pub series: Series,
    pub rank: usize,
}

impl SimpleLieType {
    pub fn new(series: Series, rank: usize) -> Result<Self> {
        let ok = match series {
            Series::A => rank >= 1,
            Series::B | Series::C => rank >= 2,
            Series::D => rank >= 3,
            Series::E => (6..=8).contains(&rank),
            Series::F => rank == 4,
            Series::G => rank == 2,
        };
        if ok {
            Ok(SimpleLieType { series, rank })
        } else {
            Err(Error::IllegalRank { series: series.letter(), rank })
        }
    }

    /// Squared lengths of the simple roots, long roots normalized to 2.
    pub fn root_lengths(&self) -> Vec<Q> {
        let n = self.rank;
        let mut l = vec![qi(2); n];
        match self.series {
            Series::B => l[n - 1] = qi(1),
            Series::C => l.iter_mut().take(n - 1).for_each(|x| *x = qi(1)),
            Series::F => {
                l[2] = qi(1);
                l[3] = qi(1);
            }
            Series::G => l[0] = qr(2, 3),
            _ => {}
        }
        l
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.rank;
        match self.series {
            Series::D => {
                let mut e: Vec<_> = (0..n - 2).map(|i| (i, i + 1)).collect();
                e.push((n - 3, n - 1));
                e
            }
            Series::E => {
                let mut e = vec![(0, 2), (2, 3), (1, 3)];
                e.extend((3..n - 1).map(|i| (i, i + 1)));
                e
            }
            _ => (0..n - 1).map(|i| (i, i + 1)).collect(),
        }
    }

    /// Gram matrix of the simple roots.
    pub fn gram(&self) -> Matrix {
        let len = self.root_lengths();
        let n = self.rank;
        let mut g = Matrix::zeros(n, n);
        for i in 0..n {
            g.set(i, i, len[i]);
        }
        for (i, j) in self.edges() {
            let v = -std::cmp::max(len[i], len[j]) / qi(2);
            g.set(i, j, v);
            g.set(j, i, v);
        }
        g
    }

    /// Cartan integers `2(a_i, a_j) / (a_j, a_j)`.
    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        cartan_from_gram(&self.gram())
    }

    pub fn dual_coxeter(&self) -> i64 {
        let n = self.rank as i64;
        match self.series {
            Series::A => n + 1,
            Series::B => 2 * n - 1,
            Series::C => n + 1,
            Series::D => 2 * n - 2,
            Series::E => [12, 18, 30][self.rank - 6],
            Series::F => 9,
            Series::G => 4,
        }
    }

    pub fn num_positive_roots(&self) -> usize {
        let n = self.rank;
        match self.series {
            Series::A => n * (n + 1) / 2,
            Series::B | Series::C => n * n,
            Series::D => n * (n - 1),
            Series::E => [36, 63, 120][n - 6],
            Series::F => 24,
            Series::G => 6,
        }
    }

    pub fn dimension(&self) -> usize {
        2 * self.num_positive_roots() + self.rank
    }
}

pub fn cartan_from_gram(g: &Matrix) -> Vec<Vec<i64>> {
    let n = g.rows();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let c = qi(2) * g.get(i, j) / g.get(j, j);
                    assert!(c.is_integer(), "non-integral Cartan entry");
                    *c.numer()
                })
                .collect()
        })
        .collect()
}

impl fmt::Display for SimpleLieType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.series.letter(), self.rank)
    }
}

impl FromStr for SimpleLieType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let series = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Series::A,
            Some('B') => Series::B,
            Some('C') => Series::C,
            Some('D') => Series::D,
            Some('E') => Series::E,
            Some('F') => Series::F,
            Some('G') => Series::G,
            _ => return Err(Error::Parse(format!("unknown Lie type `{s}`"))),
        };
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| Error::Parse(format!("bad rank in `{s}`")))?;
        SimpleLieType::new(series, rank)
    }
}

/// Identify a connected Cartan matrix up to relabeling.
pub fn classify(cartan: &[Vec<i64>]) -> Result<SimpleLieType> {
    let n = cartan.len();
    let mut degree = vec![0usize; n];
    let mut bonds = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if cartan[i][j] != 0 {
                degree[i] += 1;
                degree[j] += 1;
                bonds.push((i, j, cartan[i][j] * cartan[j][i]));
            }
        }
    }
    if bonds.len() + 1 != n {
        return Err(Error::Invalid("Cartan matrix is not of finite type".into()));
    }
    let max_bond = bonds.iter().map(|b| b.2).max().unwrap_or(1);
    let branch = degree.iter().position(|&d| d >= 3);
    let series_rank = |s, r| SimpleLieType::new(s, r);
    match max_bond {
        1 => match branch {
            None => series_rank(Series::A, n),
            Some(b) => {
                if degree[b] != 3 {
                    return Err(Error::Invalid("not a Dynkin diagram".into()));
                }
                let mut arms: Vec<usize> = (0..n)
                    .filter(|&j| cartan[b][j] != 0 && j != b)
                    .map(|j| arm_length(cartan, b, j))
                    .collect();
                arms.sort();
                match arms.as_slice() {
                    [1, 1, _] => series_rank(Series::D, n),
                    [1, 2, 2] | [1, 2, 3] | [1, 2, 4] => series_rank(Series::E, n),
                    _ => Err(Error::Invalid("not a Dynkin diagram".into())),
                }
            }
        },
        2 => {
            let &(i, j, _) = bonds.iter().find(|b| b.2 == 2).unwrap();
            let ends = |k: usize| degree[k] == 1;
            if n == 4 && !ends(i) && !ends(j) {
                return series_rank(Series::F, 4);
            }
            let short = if cartan[i][j] == -2 { j } else { i };
            if n == 2 || (ends(short) && !ends(if short == i { j } else { i })) {
                series_rank(Series::B, n)
            } else {
                series_rank(Series::C, n)
            }
        }
        3 => series_rank(Series::G, n),
        _ => Err(Error::Invalid("not a Dynkin diagram".into())),
    }
}

fn arm_length(cartan: &[Vec<i64>], from: usize, start: usize) -> usize {
    let n = cartan.len();
    let (mut prev, mut cur, mut len) = (from, start, 1);
    loop {
        let next: Vec<usize> = (0..n)
            .filter(|&k| k != cur && k != prev && cartan[cur][k] != 0)
            .collect();
        match next.as_slice() {
            [k] => {
                prev = cur;
                cur = *k;
                len += 1;
            }
            _ => return len,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_bounds() {
        assert!(SimpleLieType::new(Series::D, 2).is_err());
        assert!(SimpleLieType::new(Series::E, 9).is_err());
        assert!("G2".parse::<SimpleLieType>().is_ok());
        assert!("F3".parse::<SimpleLieType>().is_err());
    }

    #[test]
    fn classify_roundtrip() {
        for s in ["A1", "A4", "B2", "B4", "C3", "D4", "D5", "E6", "E7", "E8", "F4", "G2"] {
            let t: SimpleLieType = s.parse().unwrap();
            assert_eq!(classify(&t.cartan_matrix()).unwrap(), t, "{s}");
        }
    }

    #[test]
    fn g2_cartan() {
        let c = SimpleLieType::new(Series::G, 2).unwrap().cartan_matrix();
        assert_eq!(c, vec![vec![2, -1], vec![-3, 2]]);
    }
}
