use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Spin {
    Down,
    Up,
}

impl Spin {
    /// 1 for down, 0 for up.
    pub fn alpha(self) -> u8 {
        match self {
            Spin::Down => 1,
            Spin::Up => 0,
        }
    }

    pub fn flipped(self) -> Spin {
        match self {
            Spin::Down => Spin::Up,
            Spin::Up => Spin::Down,
        }
    }
}

impl FromStr for Spin {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "down" | "d" | "-" | "-1" => Ok(Spin::Down),
            "up" | "u" | "+" | "+1" | "1" => Ok(Spin::Up),
            other => Err(Error::Parse(format!("unknown spin {other:?}, expected up or down"))),
        }
    }
}

impl fmt::Display for Spin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Spin::Down => "down",
            Spin::Up => "up",
        })
    }
}

/// Spins prescribed at sites `x_1 < … < x_r` of the chain in sector `(n, m)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorrelationQuery {
    pub n: u64,
    pub m: u64,
    constraints: Vec<(u64, Spin)>,
}

impl CorrelationQuery {
    pub fn new(n: u64, m: u64, constraints: Vec<(u64, Spin)>) -> Result<Self> {
        if constraints.is_empty() {
            return Err(Error::Range("a correlation query needs at least one site".into()));
        }
        let len = n + m;
        for w in constraints.windows(2) {
            if w[0].0 >= w[1].0 {
                return Err(Error::Range(format!(
                    "sites must be strictly increasing, got {} then {}",
                    w[0].0, w[1].0
                )));
            }
        }
        if let Some((x, _)) = constraints.iter().find(|(x, _)| *x < 1 || *x > len) {
            return Err(Error::Range(format!("site {x} outside [1, {len}]")));
        }
        Ok(CorrelationQuery { n, m, constraints })
    }

    /// Parses `"3:down,4:up"`.
    pub fn parse(n: u64, m: u64, sites: &str) -> Result<Self> {
        let constraints = sites
            .split(',')
            .filter(|s| !s.trim().is_empty())
            .map(|item| {
                let (x, s) = item
                    .split_once(':')
                    .ok_or_else(|| Error::Parse(format!("expected site:spin, got {item:?}")))?;
                let x: u64 = x
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad site {x:?}")))?;
                Ok((x, s.parse()?))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, m, constraints)
    }

    pub fn len(&self) -> u64 {
        self.n + self.m
    }

    pub fn constraints(&self) -> &[(u64, Spin)] {
        &self.constraints
    }

    pub fn r(&self) -> usize {
        self.constraints.len()
    }

    /// Number of prescribed down spins.
    pub fn v(&self) -> u64 {
        self.constraints.iter().filter(|(_, s)| *s == Spin::Down).count() as u64
    }

    /// `Σ_k (x_k − n)·α_k`; negative when down spins sit left of the interface.
    pub fn down_distance_sum(&self) -> i64 {
        self.constraints
            .iter()
            .filter(|(_, s)| *s == Spin::Down)
            .map(|(x, _)| *x as i64 - self.n as i64)
            .sum()
    }

    /// Whether every site lies strictly right of both `n` and `m`.
    pub fn in_exp_bound_regime(&self) -> bool {
        self.constraints
            .iter()
            .all(|(x, _)| *x > self.n && *x > self.m && *x <= self.len())
    }

    /// More prescribed downs than `n` or ups than `m`.
    pub fn count_infeasible(&self) -> bool {
        let v = self.v();
        v > self.n || self.r() as u64 - v > self.m
    }

    pub fn sites_string(&self) -> String {
        self.constraints
            .iter()
            .map(|(x, s)| format!("{x}:{s}"))
            .collect::<Vec<_>>()
            .join(",")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_derive() {
        let q = CorrelationQuery::parse(2, 2, "3:down, 4:down").unwrap();
        assert_eq!(q.r(), 2);
        assert_eq!(q.v(), 2);
        assert_eq!(q.down_distance_sum(), 3);
        assert!(q.in_exp_bound_regime());
        assert_eq!(q.sites_string(), "3:down,4:down");
        let mixed = CorrelationQuery::parse(3, 1, "1:up,2:down").unwrap();
        assert_eq!(mixed.down_distance_sum(), -1);
        assert!(!mixed.in_exp_bound_regime());
    }

    #[test]
    fn validation() {
        assert!(CorrelationQuery::parse(2, 2, "").is_err());
        assert!(CorrelationQuery::parse(2, 2, "0:up").is_err());
        assert!(CorrelationQuery::parse(2, 2, "5:up").is_err());
        assert!(CorrelationQuery::parse(2, 2, "3:up,3:down").is_err());
        assert!(CorrelationQuery::parse(2, 2, "3:up,2:down").is_err());
        assert!(CorrelationQuery::parse(2, 2, "3:sideways").is_err());
        assert!(CorrelationQuery::parse(2, 2, "3").is_err());
    }

    #[test]
    fn infeasible_counts() {
        assert!(CorrelationQuery::parse(1, 3, "1:down,2:down").unwrap().count_infeasible());
        assert!(!CorrelationQuery::parse(2, 3, "1:down,2:down").unwrap().count_infeasible());
    }
}
