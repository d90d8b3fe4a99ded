use std::fmt::Write as _;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest instance the brute-force solver accepts.
pub const MAX_SAT_VARS: usize = 24;

/// A 3-CNF formula. Literals are nonzero signed variable indices, `-i`
/// meaning the negation of variable `i` (1-based). Clauses with fewer than
/// three literals are padded by repeating their last literal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SatInstance {
    num_vars: usize,
    clauses: Vec<[i32; 3]>,
}

fn pad(lits: &[i32]) -> [i32; 3] {
    let last = *lits.last().expect("nonempty clause");
    [
        lits[0],
        *lits.get(1).unwrap_or(&last),
        *lits.get(2).unwrap_or(&last),
    ]
}

impl SatInstance {
    pub fn new(num_vars: usize, clauses: Vec<Vec<i32>>) -> Result<SatInstance> {
        let mut out = Vec::with_capacity(clauses.len());
        for (j, c) in clauses.iter().enumerate() {
            if c.is_empty() || c.len() > 3 {
                return Err(Error::Precondition(format!(
                    "clause {} has {} literals",
                    j + 1,
                    c.len()
                )));
            }
            if let Some(&l) = c
                .iter()
                .find(|&&l| l == 0 || l.unsigned_abs() as usize > num_vars)
            {
                return Err(Error::OutOfRange(format!(
                    "literal {l} in clause {}",
                    j + 1
                )));
            }
            out.push(pad(c));
        }
        Ok(SatInstance {
            num_vars,
            clauses: out,
        })
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn clauses(&self) -> &[[i32; 3]] {
        &self.clauses
    }

    pub fn satisfied_by(&self, assignment: &[bool]) -> bool {
        assignment.len() == self.num_vars
            && self.clauses.iter().all(|c| {
                c.iter()
                    .any(|&l| assignment[l.unsigned_abs() as usize - 1] == (l > 0))
            })
    }

    pub fn to_dimacs(&self) -> String {
        let mut s = format!("p cnf {} {}\n", self.num_vars, self.clauses.len());
        for c in &self.clauses {
            let _ = writeln!(s, "{} {} {} 0", c[0], c[1], c[2]);
        }
        s
    }

    /// `clauses` clauses of three literals over distinct variables when
    /// `num_vars >= 3`.
    pub fn random<R: Rng + ?Sized>(num_vars: usize, clauses: usize, rng: &mut R) -> SatInstance {
        assert!(num_vars >= 1);
        let cs = (0..clauses)
            .map(|_| {
                let mut vars: Vec<i32> = Vec::new();
                while vars.len() < 3 {
                    let v = rng.gen_range(1..=num_vars as i32);
                    if !vars.contains(&v) || num_vars < 3 {
                        vars.push(v);
                    }
                }
                vars.iter()
                    .map(|&v| if rng.gen_bool(0.5) { v } else { -v })
                    .collect()
            })
            .collect();
        SatInstance::new(num_vars, cs).expect("literals in range")
    }
}

fn parse_err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Parses DIMACS CNF. Comment lines start with `c`; a line `%` ends the input.
pub fn parse_dimacs(text: &str) -> Result<SatInstance> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses: Vec<Vec<i32>> = Vec::new();
    let mut current: Vec<i32> = Vec::new();
    let mut open_at = (0, 0);
    let mut last_pos = (1, 1);
    for (ln, line) in text.lines().enumerate() {
        let ln = ln + 1;
        let trimmed = line.trim_start();
        if trimmed.is_empty() || trimmed.starts_with('c') {
            continue;
        }
        if trimmed.starts_with('%') {
            break;
        }
        if trimmed.starts_with('p') {
            let col = line.len() - trimmed.len() + 1;
            if header.is_some() {
                return Err(parse_err(ln, col, "duplicate header"));
            }
            if !clauses.is_empty() || !current.is_empty() {
                return Err(parse_err(ln, col, "header after clauses"));
            }
            let parts: Vec<&str> = trimmed.split_whitespace().collect();
            let bad = || parse_err(ln, col, "expected `p cnf <vars> <clauses>`");
            if parts.len() != 4 || parts[0] != "p" || parts[1] != "cnf" {
                return Err(bad());
            }
            let v = parts[2].parse().map_err(|_| bad())?;
            let c = parts[3].parse().map_err(|_| bad())?;
            header = Some((v, c));
            continue;
        }
        let Some((nv, _)) = header else {
            return Err(parse_err(ln, 1, "clause before header"));
        };
        let mut col = 1;
        for tok in line.split_inclusive(char::is_whitespace) {
            let word = tok.trim();
            let start = col + (tok.len() - tok.trim_start().len());
            col += tok.len();
            if word.is_empty() {
                continue;
            }
            last_pos = (ln, start);
            let lit: i32 = word
                .parse()
                .map_err(|_| parse_err(ln, start, format!("`{word}` is not a literal")))?;
            if lit == 0 {
                if current.is_empty() {
                    return Err(parse_err(ln, start, "empty clause"));
                }
                if current.len() > 3 {
                    return Err(parse_err(
                        open_at.0,
                        open_at.1,
                        "clause has more than 3 literals",
                    ));
                }
                clauses.push(std::mem::take(&mut current));
                continue;
            }
            if lit.unsigned_abs() as usize > nv {
                return Err(parse_err(
                    ln,
                    start,
                    format!("variable {} exceeds the declared {nv}", lit.unsigned_abs()),
                ));
            }
            if current.is_empty() {
                open_at = (ln, start);
            }
            current.push(lit);
        }
    }
    let Some((nv, nc)) = header else {
        return Err(parse_err(1, 1, "missing `p cnf` header"));
    };
    if !current.is_empty() {
        return Err(parse_err(
            open_at.0,
            open_at.1,
            "clause is not terminated by 0",
        ));
    }
    if clauses.len() != nc {
        return Err(parse_err(
            last_pos.0,
            last_pos.1,
            format!("header declares {nc} clauses, found {}", clauses.len()),
        ));
    }
    SatInstance::new(nv, clauses)
}

/// First satisfying assignment in lexicographic order (`false < true`,
/// variable 1 first), or `None`.
pub fn sat_solve(sat: &SatInstance) -> Result<Option<Vec<bool>>> {
    let s = sat.num_vars();
    if s > MAX_SAT_VARS {
        return Err(Error::ResourceCap(format!(
            "brute force over {s} variables"
        )));
    }
    for bits in 0u64..1 << s {
        let a: Vec<bool> = (0..s).map(|i| bits >> (s - 1 - i) & 1 == 1).collect();
        if sat.satisfied_by(&a) {
            return Ok(Some(a));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_the_basic_example() {
        let s = parse_dimacs("p cnf 3 1\n1 -2 3 0").unwrap();
        assert_eq!(s.num_vars(), 3);
        assert_eq!(s.clauses(), &[[1, -2, 3]]);
    }

    #[test]
    fn short_clauses_are_padded() {
        let s = parse_dimacs("c unit\np cnf 1 1\n1 0\n").unwrap();
        assert_eq!(s.clauses(), &[[1, 1, 1]]);
        let s = parse_dimacs("p cnf 2 1\n1 -2\n0\n").unwrap();
        assert_eq!(s.clauses(), &[[1, -2, -2]]);
    }

    #[test]
    fn errors_carry_locations() {
        let e = parse_dimacs("p cnf 2 2\n1 2 0\n0\n").unwrap_err();
        assert_eq!(
            e,
            Error::Parse {
                line: 3,
                column: 1,
                message: "empty clause".into()
            }
        );
        assert!(matches!(
            parse_dimacs("p cnf 2 1\n1 3 0\n"),
            Err(Error::Parse {
                line: 2,
                column: 3,
                ..
            })
        ));
        assert!(matches!(
            parse_dimacs("p cnf 2 1\n1 2\n"),
            Err(Error::Parse {
                line: 2,
                column: 1,
                ..
            })
        ));
        assert!(matches!(
            parse_dimacs("p dnf 2 1\n1 2 0\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_dimacs("1 2 0\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_dimacs("p cnf 4 1\n1 2 3 4 0\n"),
            Err(Error::Parse {
                line: 2,
                column: 1,
                ..
            })
        ));
        assert!(matches!(
            parse_dimacs("p cnf 2 1\n1 x 0\n"),
            Err(Error::Parse {
                line: 2,
                column: 3,
                ..
            })
        ));
    }

    #[test]
    fn dimacs_round_trip() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let s = SatInstance::random(5, 4, &mut rng);
        assert_eq!(parse_dimacs(&s.to_dimacs()).unwrap(), s);
    }

    #[test]
    fn brute_force_examples() {
        let s = SatInstance::new(1, vec![vec![1], vec![1, 1, 1]]).unwrap();
        assert_eq!(sat_solve(&s).unwrap(), Some(vec![true]));
        let s = SatInstance::new(1, vec![vec![1], vec![-1]]).unwrap();
        assert_eq!(sat_solve(&s).unwrap(), None);
        let s = SatInstance::new(0, vec![]).unwrap();
        assert_eq!(sat_solve(&s).unwrap(), Some(vec![]));
    }
}
