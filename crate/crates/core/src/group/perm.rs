use std::fmt;

use super::GroupError;

/// A permutation of `{0, .., degree-1}` stored as its image list.
///
/// Composition follows the right-to-left convention: `a.compose(&b)` is
/// the map `x -> a(b(x))`, so `(13)(12) = (123)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Perm(Vec<u16>);

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Perm((0..degree as u16).collect())
    }

    pub fn from_images(images: Vec<u16>) -> Result<Self, GroupError> {
        let mut seen = vec![false; images.len()];
        for &x in &images {
            let x = x as usize;
            if x >= images.len() || seen[x] {
                return Err(GroupError::NotAPermutation(format!("{images:?}")));
            }
            seen[x] = true;
        }
        Ok(Perm(images))
    }

    /// Builds a permutation from 1-based cycles.
    pub fn from_cycle_list(degree: usize, cycles: &[Vec<usize>]) -> Result<Self, GroupError> {
        let mut images: Vec<u16> = (0..degree as u16).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (k, &p) in cycle.iter().enumerate() {
                if p == 0 || p > degree {
                    return Err(GroupError::NotAPermutation(format!(
                        "point {p} outside 1..={degree}"
                    )));
                }
                if touched[p - 1] {
                    return Err(GroupError::NotAPermutation(format!(
                        "point {p} repeated in cycles"
                    )));
                }
                touched[p - 1] = true;
                let next = cycle[(k + 1) % cycle.len()];
                if next == 0 || next > degree {
                    return Err(GroupError::NotAPermutation(format!(
                        "point {next} outside 1..={degree}"
                    )));
                }
                images[p - 1] = (next - 1) as u16;
            }
        }
        Perm::from_images(images)
    }

    /// Parses cycle notation such as `(13)(12)`, `(1 2 3)` or `(10,11,12)`.
    ///
    /// Inside a cycle, points are separated by spaces or commas; when a cycle
    /// contains no separator each digit is a separate point.
    pub fn parse_cycles(degree: usize, text: &str) -> Result<Self, GroupError> {
        let mut cycles = Vec::new();
        let mut rest = text.trim();
        if rest == "1" || rest == "id" || rest == "()" {
            return Ok(Perm::identity(degree));
        }
        while !rest.is_empty() {
            let open = rest
                .strip_prefix('(')
                .ok_or_else(|| GroupError::NotAPermutation(text.to_string()))?;
            let close = open
                .find(')')
                .ok_or_else(|| GroupError::NotAPermutation(text.to_string()))?;
            let body = &open[..close];
            let points: Option<Vec<usize>> = if body.contains([' ', ',']) {
                body.split([' ', ','])
                    .filter(|s| !s.is_empty())
                    .map(|s| s.parse::<usize>().ok())
                    .collect()
            } else {
                body.chars()
                    .map(|c| c.to_digit(10).map(|d| d as usize))
                    .collect()
            };
            let points = points.ok_or_else(|| GroupError::NotAPermutation(text.to_string()))?;
            if !points.is_empty() {
                cycles.push(points);
            }
            rest = open[close + 1..].trim_start();
        }
        Perm::from_cycle_list(degree, &cycles)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[u16] {
        &self.0
    }

    pub fn apply(&self, point: usize) -> usize {
        self.0[point] as usize
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm(other.0.iter().map(|&x| self.0[x as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u16; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x as usize] = i as u16;
        }
        Perm(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    /// Embeds into a larger degree, shifting all points by `offset`.
    pub fn shifted(&self, offset: usize, degree: usize) -> Perm {
        let mut images: Vec<u16> = (0..degree as u16).collect();
        for (i, &x) in self.0.iter().enumerate() {
            images[i + offset] = x + offset as u16;
        }
        Perm(images)
    }

    /// Disjoint cycles of length at least two, 1-based, each starting at its
    /// smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.0.len()];
        let mut out = Vec::new();
        for start in 0..self.0.len() {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start + 1];
            seen[start] = true;
            let mut x = self.0[start] as usize;
            while x != start {
                seen[x] = true;
                cycle.push(x + 1);
                x = self.0[x] as usize;
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    pub fn is_even(&self) -> bool {
        self.cycles().iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 0
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let parts: Vec<String> = c.iter().map(|p| p.to_string()).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        Ok(())
    }
}
