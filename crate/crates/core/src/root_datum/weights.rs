use std::collections::HashMap;

use super::{dot, Coweight, RootDatum};

/// W-invariant form on coweights, `(x, y) = sum_{alpha > 0} <alpha,x><alpha,y>`.
/// Degenerate only on the center, which Freudenthal's formula never sees.
fn form(d: &RootDatum, x: &[i64], y: &[i64]) -> i64 {
    d.positive_roots().iter().map(|a| dot(&a.weight, x) * dot(&a.weight, y)).sum()
}

/// Multiplicities of the dominant weights of the dual-group module with
/// highest weight `mu` (dominant). Roots of the dual group are the coroots.
pub(super) fn freudenthal(d: &RootDatum, mu: &Coweight) -> HashMap<Coweight, u64> {
    let mut dominant: Vec<(i64, Coweight)> = d
        .omega_set(mu)
        .expect("mu is dominant")
        .into_iter()
        .filter(|l| d.is_dominant(l))
        .map(|l| {
            let level: i64 = d.coroot_coordinates(&(mu - &l)).expect("same coset").iter().sum();
            (level, l)
        })
        .collect();
    dominant.sort();

    let mut mult: HashMap<Coweight, u64> = HashMap::new();
    let two_rho = d.two_rho_coroot();
    for (level, nu) in dominant {
        if level == 0 {
            mult.insert(nu, 1);
            continue;
        }
        let mut num: i64 = 0;
        for beta in d.positive_roots() {
            let mut k = 1;
            loop {
                let up = &nu + &beta.coroot.scale(k);
                let Some(&m) = mult.get(&d.dominant_representative(&up)) else {
                    break;
                };
                num += 2 * (m as i64) * form(d, &up, &beta.coroot);
                k += 1;
            }
        }
        let sum = &(mu + &nu) + two_rho;
        let den = form(d, &(mu - &nu), &sum);
        debug_assert!(den > 0 && num % den == 0, "Freudenthal division is exact");
        mult.insert(nu, (num / den) as u64);
    }
    mult
}
