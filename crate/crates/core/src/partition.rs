//! Integer partitions, stored with parts in decreasing order.

use std::fmt;
use std::str::FromStr;

use crate::error::NwError;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Distinct parts in decreasing order with their multiplicities.
    pub fn multiplicities(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for &p in &self.0 {
            match out.last_mut() {
                Some((q, n)) if *q == p => *n += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    pub fn multiplicity(&self, part: usize) -> usize {
        self.0.iter().filter(|&&p| p == part).count()
    }

    /// `self \ part`, if `part` occurs.
    pub fn remove(&self, part: usize) -> Option<Partition> {
        let i = self.0.iter().position(|&p| p == part)?;
        let mut parts = self.0.clone();
        parts.remove(i);
        Some(Partition(parts))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FromStr for Partition {
    type Err = NwError;

    fn from_str(s: &str) -> Result<Self, NwError> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        if s.is_empty() {
            return Ok(Partition::empty());
        }
        let parts = s
            .split(',')
            .map(|p| p.trim().parse::<usize>().map_err(|_| NwError::Parse(format!("bad partition part `{p}`"))))
            .collect::<Result<Vec<_>, _>>()?;
        if parts.contains(&0) {
            return Err(NwError::Parse("partition parts must be positive".into()));
        }
        Ok(Partition::new(parts))
    }
}

/// All partitions of `n` in decreasing lexicographic order, `(n)` first.
pub fn partitions_of(n: usize) -> Vec<Partition> {
    fn go(n: usize, max: usize, acc: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if n == 0 {
            out.push(Partition(acc.clone()));
            return;
        }
        for p in (1..=n.min(max)).rev() {
            acc.push(p);
            go(n - p, p, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        let counts: Vec<usize> = (0..=7).map(|n| partitions_of(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15]);
    }

    #[test]
    fn order_and_parse() {
        let ps = partitions_of(3);
        assert_eq!(ps[0], "3".parse().unwrap());
        assert_eq!(ps[2], Partition::new(vec![1, 1, 1]));
        assert_eq!("1,2,1".parse::<Partition>().unwrap().parts(), &[2, 1, 1]);
        assert!("2,0".parse::<Partition>().is_err());
    }

    #[test]
    fn removal_and_multiplicity() {
        let p = Partition::new(vec![2, 1, 1]);
        assert_eq!(p.multiplicities(), vec![(2, 1), (1, 2)]);
        assert_eq!(p.remove(1), Some(Partition::new(vec![2, 1])));
        assert_eq!(p.remove(3), None);
        assert_eq!(p.to_string(), "(2,1,1)");
    }
}
