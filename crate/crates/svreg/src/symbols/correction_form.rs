//! Formal cancellation checker for the bump-correction form.
//!
//! Given abstract forms phi_k(t_(k+1), .., t_(n-1)) with
//! d phi_k = phi_(k-1)(0, ..), each alternating and vanishing at infinity,
//! the combination sum_I (-1)^|I| sgn(I I_c) D^I phi_|I|(t^(I_c)) over all
//! ordered tuples I (D^J = d(rho(t_j1) d(rho(t_j2) ... d(rho(t_jk) phi))))
//! is alternating and restricts to zero on every hyperplane t_j = 0. The
//! checker expands everything into a finite term algebra and verifies both
//! claims by exact cancellation.

use crate::verdict::Verdict;
use std::collections::BTreeMap;

/// One expanded summand: coeff * (wedge of d rho(t_i) over `drho`) *
/// (product of rho(t_i) over `rho`) * phi_level(0^zeros, t_vars).
/// `drho` is sorted with the antisymmetry sign absorbed into `coeff`;
/// `vars` is sorted the same way using the alternation of phi.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
struct TermKey {
    drho: Vec<u8>,
    rho: Vec<u8>,
    level: u8,
    zeros: u8,
    vars: Vec<u8>,
}

type TermSum = BTreeMap<TermKey, i64>;

fn add_term(sum: &mut TermSum, key: TermKey, c: i64) {
    if c == 0 {
        return;
    }
    let entry = sum.entry(key.clone()).or_insert(0);
    *entry += c;
    if *entry == 0 {
        sum.remove(&key);
    }
}

/// Sort a tuple, returning the permutation sign; None if entries repeat.
fn sort_signed(mut v: Vec<u8>) -> Option<(Vec<u8>, i64)> {
    let mut sign = 1i64;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            if v[j - 1] == v[j] {
                return None;
            }
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    for w in v.windows(2) {
        if w[0] == w[1] {
            return None;
        }
    }
    Some((v, sign))
}

/// sgn of the juxtaposition (I, I_c) as a permutation of 1..=m.
fn juxtaposition_sign(tuple: &[u8], m: u8) -> i64 {
    let mut full: Vec<u8> = tuple.to_vec();
    for j in 1..=m {
        if !tuple.contains(&j) {
            full.push(j);
        }
    }
    // count inversions
    let mut sign = 1i64;
    for i in 0..full.len() {
        for j in (i + 1)..full.len() {
            if full[i] > full[j] {
                sign = -sign;
            }
        }
    }
    sign
}

fn ordered_tuples(m: u8) -> Vec<Vec<u8>> {
    // all sequences of distinct elements of 1..=m, including the empty one
    let mut out: Vec<Vec<u8>> = vec![vec![]];
    let mut frontier: Vec<Vec<u8>> = vec![vec![]];
    for _ in 0..m {
        let mut next = vec![];
        for t in &frontier {
            for j in 1..=m {
                if !t.contains(&j) {
                    let mut w = t.clone();
                    w.push(j);
                    next.push(w);
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// Build the full expansion of the correction form for n - 1 = m coordinates.
fn build_form(m: u8) -> TermSum {
    let mut sum = TermSum::new();
    for tuple in ordered_tuples(m) {
        let k = tuple.len();
        let base = if k % 2 == 0 { 1i64 } else { -1 };
        let sign = base * juxtaposition_sign(&tuple, m);
        let complement: Vec<u8> = (1..=m).filter(|j| !tuple.contains(j)).collect();
        if k == 0 {
            add_term(
                &mut sum,
                TermKey {
                    drho: vec![],
                    rho: vec![],
                    level: 0,
                    zeros: 0,
                    vars: complement,
                },
                sign,
            );
            continue;
        }
        // D^I phi = drho_(i1) ^ .. ^ drho_(ik) ^ phi
        //         + drho_(i1) ^ .. ^ drho_(i(k-1)) ^ rho_(ik) d phi
        if let Some((drho, s)) = sort_signed(tuple.clone()) {
            add_term(
                &mut sum,
                TermKey {
                    drho,
                    rho: vec![],
                    level: k as u8,
                    zeros: 0,
                    vars: complement.clone(),
                },
                sign * s,
            );
        }
        let head: Vec<u8> = tuple[..k - 1].to_vec();
        let last = tuple[k - 1];
        if let Some((drho, s)) = sort_signed(head) {
            add_term(
                &mut sum,
                TermKey {
                    drho,
                    rho: vec![last],
                    level: k as u8 - 1,
                    zeros: 1,
                    vars: complement,
                },
                sign * s,
            );
        }
    }
    sum
}

/// Restrict the expanded form to t_j = 0: d rho(t_j) pulls back to zero,
/// rho(t_j) to 1, and a phi argument t_j moves to the zero block with the
/// alternation sign (two zeros kill the term).
fn restrict(sum: &TermSum, j: u8) -> TermSum {
    let mut out = TermSum::new();
    for (key, c) in sum {
        if key.drho.contains(&j) {
            continue;
        }
        let mut key = key.clone();
        let mut c = *c;
        if let Some(pos) = key.rho.iter().position(|&x| x == j) {
            key.rho.remove(pos);
        }
        if let Some(pos) = key.vars.iter().position(|&x| x == j) {
            if key.zeros >= 1 {
                continue; // phi(0, 0, ..) = 0 by alternation
            }
            // move to the front past `pos` earlier variables
            if pos % 2 == 1 {
                c = -c;
            }
            key.vars.remove(pos);
            key.zeros += 1;
        }
        add_term(&mut out, key, c);
    }
    out
}

/// Apply the transposition (a b) of coordinates to the whole sum.
fn transpose(sum: &TermSum, a: u8, b: u8) -> TermSum {
    let swap = |v: &[u8]| -> Vec<u8> {
        v.iter()
            .map(|&x| {
                if x == a {
                    b
                } else if x == b {
                    a
                } else {
                    x
                }
            })
            .collect()
    };
    let mut out = TermSum::new();
    for (key, c) in sum {
        let Some((drho, s1)) = sort_signed(swap(&key.drho)) else {
            continue;
        };
        let Some((vars, s2)) = sort_signed(swap(&key.vars)) else {
            continue;
        };
        let mut rho = swap(&key.rho);
        rho.sort_unstable();
        add_term(
            &mut out,
            TermKey {
                drho,
                rho,
                level: key.level,
                zeros: key.zeros,
                vars,
            },
            c * s1 * s2,
        );
    }
    out
}

/// Verify the cancellation and alternation claims for weight n (2 <= n <= 7).
pub fn cancellation_check(n: u32) -> Verdict {
    if !(2..=7).contains(&n) {
        return Verdict::fail("correction form").with_trail("n out of the supported range 2..=7");
    }
    let m = (n - 1) as u8;
    let form = build_form(m);
    let mut parts = vec![];
    for j in 1..=m {
        let r = restrict(&form, j);
        let name = format!("restriction t_{} = 0 cancels", j);
        parts.push(if r.is_empty() {
            Verdict::pass(name)
        } else {
            Verdict::fail(name).with_trail(format!("{} surviving terms", r.len()))
        });
    }
    for a in 1..=m {
        for b in (a + 1)..=m {
            let mut t = transpose(&form, a, b);
            for (k, c) in &form {
                add_term(&mut t, k.clone(), *c);
            }
            let name = format!("alternating under ({} {})", a, b);
            parts.push(if t.is_empty() {
                Verdict::pass(name)
            } else {
                Verdict::fail(name).with_trail(format!("{} surviving terms", t.len()))
            });
        }
    }
    let mut v = Verdict::all(format!("correction form n={}", n), parts);
    v.note(format!("expanded form has {} terms", form.len()));
    v
}
