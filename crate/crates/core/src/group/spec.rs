//! Text grammar for groups.
//!
//! ```text
//! spec   := factor ( 'x' factor )*
//! factor := 'Z' n | 'S' n | 'A' n | 'D' n | 'Dic' n
//! ```
//!
//! Whitespace and case are ignored. `D n` is the dihedral group of order
//! `2n` (so `D4` has order 8), `Dic n` the dicyclic group of order `4n`.
//! A product of `Z` factors is built as an abelian group; any other product
//! becomes a permutation group on the disjoint union of the factors' points.

use thiserror::Error;

use super::{Group, GroupError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpecError {
    #[error("group spec is empty")]
    Empty,
    #[error("at position {pos}: expected one of Z, S, A, D, Dic")]
    UnknownFactor { pos: usize },
    #[error("at position {pos}: expected a number")]
    ExpectedNumber { pos: usize },
    #[error("at position {pos}: expected 'x' between factors")]
    ExpectedSeparator { pos: usize },
    #[error("in factor at position {pos}: {source}")]
    Group {
        pos: usize,
        #[source]
        source: GroupError,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Family {
    Cyclic,
    Symmetric,
    Alternating,
    Dihedral,
    Dicyclic,
}

pub fn parse_group_spec(text: &str) -> Result<Group, SpecError> {
    let chars: Vec<(usize, char)> = text
        .char_indices()
        .filter(|(_, c)| !c.is_whitespace())
        .map(|(i, c)| (i, c.to_ascii_lowercase()))
        .collect();
    if chars.is_empty() {
        return Err(SpecError::Empty);
    }
    let mut factors: Vec<(usize, Family, u32)> = Vec::new();
    let mut i = 0;
    loop {
        let pos = chars.get(i).map_or(text.len(), |c| c.0);
        let rest: String = chars[i.min(chars.len())..].iter().map(|c| c.1).collect();
        let (family, skip) = if rest.starts_with("dic") {
            (Family::Dicyclic, 3)
        } else {
            match rest.chars().next() {
                Some('z') | Some('c') => (Family::Cyclic, 1),
                Some('s') => (Family::Symmetric, 1),
                Some('a') => (Family::Alternating, 1),
                Some('d') => (Family::Dihedral, 1),
                _ => return Err(SpecError::UnknownFactor { pos }),
            }
        };
        i += skip;
        let start = i;
        while i < chars.len() && chars[i].1.is_ascii_digit() {
            i += 1;
        }
        let num_pos = chars.get(start).map_or(text.len(), |c| c.0);
        if start == i {
            return Err(SpecError::ExpectedNumber { pos: num_pos });
        }
        let digits: String = chars[start..i].iter().map(|c| c.1).collect();
        let n: u32 = digits
            .parse()
            .map_err(|_| SpecError::ExpectedNumber { pos: num_pos })?;
        factors.push((pos, family, n));
        match chars.get(i) {
            None => break,
            Some(&(_, 'x')) | Some(&(_, '×')) | Some(&(_, '*')) => i += 1,
            Some(&(p, _)) => return Err(SpecError::ExpectedSeparator { pos: p }),
        }
    }

    if factors.iter().all(|f| f.1 == Family::Cyclic) {
        let inv: Vec<u32> = factors.iter().map(|f| f.2).collect();
        return Group::abelian(&inv).map_err(|source| SpecError::Group {
            pos: factors[0].0,
            source,
        });
    }
    let mut acc: Option<Group> = None;
    for (pos, family, n) in factors {
        let wrap = |source| SpecError::Group { pos, source };
        let g = match family {
            Family::Cyclic => Group::cyclic(n),
            Family::Symmetric => Group::symmetric(n as usize),
            Family::Alternating => Group::alternating(n as usize),
            Family::Dihedral => Group::dihedral(n as usize),
            Family::Dicyclic => Group::dicyclic(n as usize),
        }
        .map_err(wrap)?;
        acc = Some(match acc {
            None => g,
            Some(a) => a.direct_product(&g).map_err(wrap)?,
        });
    }
    Ok(acc.expect("at least one factor"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_abelian_products() {
        let g = parse_group_spec("Z2xZ4").unwrap();
        assert_eq!(g.order(), 8);
        assert!(g.is_abelian());
        assert_eq!(g.name(), "Z2 x Z4");
        let g = parse_group_spec(" z 2 X z 2 x Z2 ").unwrap();
        assert_eq!(g.order(), 8);
        assert_eq!(g.elements_of_order(2).len(), 7);
    }

    #[test]
    fn parses_named_families() {
        assert_eq!(parse_group_spec("S4").unwrap().order(), 24);
        assert_eq!(parse_group_spec("a 5").unwrap().order(), 60);
        assert_eq!(parse_group_spec("D6").unwrap().order(), 12);
        assert_eq!(parse_group_spec("Dic 3").unwrap().order(), 12);
        let g = parse_group_spec("D4 x Z2").unwrap();
        assert_eq!(g.order(), 16);
        assert!(!g.is_abelian());
        assert_eq!(g.name(), "D4 x Z2");
    }

    #[test]
    fn reports_error_positions() {
        assert_eq!(parse_group_spec("").unwrap_err(), SpecError::Empty);
        assert_eq!(
            parse_group_spec("Z2 x Q8").unwrap_err(),
            SpecError::UnknownFactor { pos: 5 }
        );
        assert_eq!(
            parse_group_spec("Z2 x S").unwrap_err(),
            SpecError::ExpectedNumber { pos: 6 }
        );
        assert_eq!(
            parse_group_spec("Z2 Z4").unwrap_err(),
            SpecError::ExpectedSeparator { pos: 3 }
        );
        assert!(matches!(
            parse_group_spec("Z1").unwrap_err(),
            SpecError::Group { pos: 0, .. }
        ));
    }
}
