use std::fmt;
use std::str::FromStr;

use super::RootDatum;
use crate::error::{Error, Result};

/// Built-in groups and their coordinates on `X_*(T)`.
///
/// * `GL(n)`: `X_*(T) = Z^n`, cocharacter `t -> diag(t^{x_1}, ..., t^{x_n})`.
///   Roots and coroots `e_i - e_j`; fundamental coweights `(1,...,1,0,...,0)`;
///   `omega(1)` is the length-zero element in the coset of `t_{(1,0,...,0)}`.
/// * `SL(n)`: `X_*(T)` is the coroot lattice, in the basis of simple coroots.
///   `alpha_i` has coordinates the `i`-th row of the Cartan matrix. `Omega` is trivial.
/// * `PGL(n)`: `X_*(T)` is the coweight lattice, in the basis of fundamental
///   coweights. `alpha_i = e_i` and `alpha_j^vee` is the `j`-th Cartan column.
/// * `Sp(4)`: simply connected type `C_2` on the coroot basis, `alpha_1` short.
/// * `GSp(4)`: `X_*(T) = Z^3`, `(x_1, x_2, c) -> diag(t^{x_1}, t^{x_2}, t^{c-x_2}, t^{c-x_1})`.
///   `alpha_1 = (1,-1,0)`, `alpha_2 = (0,2,-1)`, `alpha_1^vee = (1,-1,0)`,
///   `alpha_2^vee = (0,1,0)`; `omega(1)` lies over `(0,0,1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Preset {
    Gl(usize),
    Sl(usize),
    Pgl(usize),
    Sp4,
    GSp4,
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Preset::Gl(n) => write!(f, "GL{n}"),
            Preset::Sl(n) => write!(f, "SL{n}"),
            Preset::Pgl(n) => write!(f, "PGL{n}"),
            Preset::Sp4 => write!(f, "Sp4"),
            Preset::GSp4 => write!(f, "GSp4"),
        }
    }
}

impl FromStr for Preset {
    type Err = Error;

    /// Accepts `GL3`, `GL(3)`, `gl_3`, and an optional `affine` suffix
    /// (`SL2affine`), which names the same datum.
    fn from_str(s: &str) -> Result<Self> {
        let mut key: String = s
            .chars()
            .filter(|c| !matches!(c, '(' | ')' | '_' | '-' | ' '))
            .collect::<String>()
            .to_ascii_lowercase();
        if let Some(stripped) = key.strip_suffix("affine") {
            key = stripped.to_string();
        }
        let unknown = || Error::Config(format!("unknown group preset '{s}'"));
        let parse_n = |rest: &str| -> Result<usize> {
            let n: usize = rest.parse().map_err(|_| unknown())?;
            if !(2..=7).contains(&n) {
                return Err(Error::Config(format!("preset '{s}': n must be in 2..=7")));
            }
            Ok(n)
        };
        match key.as_str() {
            "sp4" => Ok(Preset::Sp4),
            "gsp4" => Ok(Preset::GSp4),
            _ => {
                if let Some(rest) = key.strip_prefix("pgl") {
                    Ok(Preset::Pgl(parse_n(rest)?))
                } else if let Some(rest) = key.strip_prefix("gl") {
                    Ok(Preset::Gl(parse_n(rest)?))
                } else if let Some(rest) = key.strip_prefix("sl") {
                    Ok(Preset::Sl(parse_n(rest)?))
                } else {
                    Err(unknown())
                }
            }
        }
    }
}

fn type_a_cartan(l: usize) -> Vec<Vec<i64>> {
    (0..l)
        .map(|i| {
            (0..l)
                .map(|j| match i.abs_diff(j) {
                    0 => 2,
                    1 => -1,
                    _ => 0,
                })
                .collect()
        })
        .collect()
}

fn unit(n: usize, i: usize) -> Vec<i64> {
    (0..n).map(|j| i64::from(i == j)).collect()
}

pub(super) fn build(p: Preset) -> Result<RootDatum> {
    let name = p.to_string();
    match p {
        Preset::Gl(n) => {
            let simple: Vec<Vec<i64>> = (0..n - 1)
                .map(|i| (0..n).map(|j| i64::from(j == i) - i64::from(j == i + 1)).collect())
                .collect();
            let fundamental = (1..n).map(|i| (0..n).map(|j| i64::from(j < i)).collect()).collect();
            RootDatum::from_simple_data(&name, n, simple.clone(), simple, Some(fundamental), Some(unit(n, 0)))
        }
        Preset::Sl(n) => {
            let l = n - 1;
            let a = type_a_cartan(l);
            let coroots = (0..l).map(|i| unit(l, i)).collect();
            RootDatum::from_simple_data(&name, l, a, coroots, None, None)
        }
        Preset::Pgl(n) => {
            let l = n - 1;
            let a = type_a_cartan(l);
            let roots = (0..l).map(|i| unit(l, i)).collect();
            let coroots = (0..l).map(|j| (0..l).map(|i| a[i][j]).collect()).collect();
            let fundamental = (0..l).map(|i| unit(l, i)).collect();
            RootDatum::from_simple_data(&name, l, roots, coroots, Some(fundamental), Some(unit(l, 0)))
        }
        Preset::Sp4 => {
            let a = vec![vec![2, -1], vec![-2, 2]];
            RootDatum::from_simple_data(&name, 2, a, vec![unit(2, 0), unit(2, 1)], None, None)
        }
        Preset::GSp4 => RootDatum::from_simple_data(
            &name,
            3,
            vec![vec![1, -1, 0], vec![0, 2, -1]],
            vec![vec![1, -1, 0], vec![0, 1, 0]],
            Some(vec![vec![1, 0, 0], vec![1, 1, 1]]),
            Some(vec![0, 0, 1]),
        ),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_names() {
        assert_eq!("GL2".parse::<Preset>().unwrap(), Preset::Gl(2));
        assert_eq!("GL(3)".parse::<Preset>().unwrap(), Preset::Gl(3));
        assert_eq!("SL2affine".parse::<Preset>().unwrap(), Preset::Sl(2));
        assert_eq!("pgl_3".parse::<Preset>().unwrap(), Preset::Pgl(3));
        assert_eq!("GSp4".parse::<Preset>().unwrap(), Preset::GSp4);
        assert!("E8".parse::<Preset>().is_err());
        assert!("GL1".parse::<Preset>().is_err());
    }

    #[test]
    fn every_preset_builds() {
        for p in [Preset::Gl(2), Preset::Gl(4), Preset::Sl(3), Preset::Pgl(2), Preset::Sp4, Preset::GSp4] {
            let d = build(p).unwrap();
            assert_eq!(d.name(), p.to_string());
        }
    }

    #[test]
    fn sp4_is_type_c2() {
        let d = build(Preset::Sp4).unwrap();
        assert_eq!(d.num_positive_roots(), 4);
        assert_eq!(d.coxeter_number(), 4);
    }
}
