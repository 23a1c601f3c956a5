//! Structural invariants and comparisons of loops: center, order spectrum,
//! exponent-2 counts, table distance, and isomorphism testing with verified
//! witnesses.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::extension::{IsoWitness, MagmaTable};
use crate::{Error, MulTable, Result};

/// Isomorphism-invariant summary of a loop.
///
/// Element orders are taken through left-bracketed powers `x*(x*(...))`; in a
/// loop the left translation by `x` is a permutation, so the orbit of the
/// neutral element is a cycle and the order is always defined.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LoopProfile {
    pub size: usize,
    /// Elements commuting with everything (commutation only; no
    /// associativity condition is imposed).
    pub center_size: usize,
    /// order -> multiplicity
    pub order_spectrum: BTreeMap<usize, usize>,
    /// Number of `x` with `x*x = e`.
    pub exponent2_count: usize,
    /// Whether some triple associates badly.
    pub associator_nontrivial: bool,
}

fn require_loop(t: &MagmaTable) -> Result<usize> {
    t.neutral().ok_or_else(|| Error::NotLoop { reason: "no two-sided neutral element".into() })
}

/// Order of `x` through left-bracketed powers: the least `m >= 1` with
/// `x*(x*(...*(x*e))) = e` after `m` applications.
pub fn element_order(t: &MagmaTable, x: usize) -> Result<usize> {
    let e = require_loop(t)?;
    let mut acc = t.get(x, e);
    let mut m = 1;
    while acc != e {
        acc = t.get(x, acc);
        m += 1;
    }
    Ok(m)
}

/// Exhaustive profile of a loop.
pub fn profile(t: &MagmaTable) -> Result<LoopProfile> {
    let e = require_loop(t)?;
    let n = t.size();
    let center_size = (0..n)
        .filter(|&x| (0..n).all(|y| t.get(x, y) == t.get(y, x)))
        .count();
    let mut order_spectrum = BTreeMap::new();
    for x in 0..n {
        *order_spectrum.entry(element_order(t, x)?).or_insert(0) += 1;
    }
    let exponent2_count = (0..n).filter(|&x| t.get(x, x) == e).count();
    let associator_nontrivial = (0..n).any(|x| {
        (0..n).any(|y| {
            let xy = t.get(x, y);
            (0..n).any(|z| t.get(xy, z) != t.get(x, t.get(y, z)))
        })
    });
    Ok(LoopProfile { size: n, center_size, order_spectrum, exponent2_count, associator_nontrivial })
}

/// Number of cells on which two equally-sized tables disagree.
pub fn drapal_distance<A: MulTable + ?Sized, B: MulTable + ?Sized>(a: &A, b: &B) -> Result<usize> {
    let n = a.size();
    if b.size() != n {
        return Err(Error::SizeMismatch { left: n, right: b.size() });
    }
    let mut d = 0;
    for x in 0..n {
        for y in 0..n {
            if a.cell(x, y) != b.cell(x, y) {
                d += 1;
            }
        }
    }
    Ok(d)
}

/// Per-element invariants used to prune the isomorphism search. Any
/// isomorphism must preserve all of them.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
struct ElementInvariant {
    order: usize,
    central: bool,
    squares_to_neutral: bool,
}

fn element_invariants(t: &MagmaTable) -> Result<Vec<ElementInvariant>> {
    let e = require_loop(t)?;
    let n = t.size();
    (0..n)
        .map(|x| {
            Ok(ElementInvariant {
                order: element_order(t, x)?,
                central: (0..n).all(|y| t.get(x, y) == t.get(y, x)),
                squares_to_neutral: t.get(x, x) == e,
            })
        })
        .collect()
}

/// How each element of a loop is reached from a small generating set:
/// either it is a designated generator or the product of two earlier
/// elements. Fixing generator images then forces every other image.
struct Construction {
    /// `(element, how)` in construction order; `how` is `None` for a
    /// generator and `Some((i,j))` for the product `seq[i] * seq[j]`.
    seq: Vec<(usize, Option<(usize, usize)>)>,
    generators: Vec<usize>,
}

fn construction(t: &MagmaTable) -> Construction {
    let e = t.neutral().expect("construction requires a loop");
    let n = t.size();
    let mut seq: Vec<(usize, Option<(usize, usize)>)> = vec![(e, None)];
    let mut pos = vec![usize::MAX; n];
    pos[e] = 0;
    let mut generators = Vec::new();
    while seq.len() < n {
        // close under products of already-reached elements
        let mut grew = true;
        while grew && seq.len() < n {
            grew = false;
            'outer: for i in 0..seq.len() {
                for j in 0..seq.len() {
                    let p = t.get(seq[i].0, seq[j].0);
                    if pos[p] == usize::MAX {
                        pos[p] = seq.len();
                        seq.push((p, Some((i, j))));
                        grew = true;
                        break 'outer;
                    }
                }
            }
        }
        if seq.len() < n {
            let g = (0..n).find(|&x| pos[x] == usize::MAX).expect("unreached element exists");
            generators.push(g);
            pos[g] = seq.len();
            seq.push((g, None));
        }
    }
    Construction { seq, generators }
}

/// Decides isomorphism of two loops.
///
/// Profiles give a fast rejection; otherwise a backtracking search maps the
/// generating sequence of `a` into `b`, pruning on per-element invariants and
/// injectivity, and every candidate is verified cell-wise before being
/// returned. A `None` answer means the profiles differ or the search space
/// was exhausted.
pub fn is_isomorphic(a: &MagmaTable, b: &MagmaTable) -> Result<Option<IsoWitness>> {
    let ea = require_loop(a)?;
    let eb = require_loop(b)?;
    if a.size() != b.size() {
        return Ok(None);
    }
    if profile(a)? != profile(b)? {
        return Ok(None);
    }
    let inv_a = element_invariants(a)?;
    let inv_b = element_invariants(b)?;
    let cons = construction(a);
    let n = a.size();

    // forward[x] = image of x in b; usize::MAX = unassigned
    let mut forward = vec![usize::MAX; n];
    let mut used = vec![false; n];
    forward[ea] = eb;
    used[eb] = true;

    fn assign(
        a: &MagmaTable,
        b: &MagmaTable,
        cons: &Construction,
        inv_a: &[ElementInvariant],
        inv_b: &[ElementInvariant],
        forward: &mut [usize],
        used: &mut [bool],
        from: usize,
        gen_idx: usize,
    ) -> bool {
        // propagate derived elements until the next unset generator
        let mut assigned: Vec<usize> = Vec::new();
        let mut ok = true;
        let mut next = cons.seq.len();
        for k in from..cons.seq.len() {
            let (x, how) = cons.seq[k];
            match how {
                None => {
                    if forward[x] == usize::MAX {
                        next = k;
                        break;
                    }
                }
                Some((i, j)) => {
                    let (xi, _) = cons.seq[i];
                    let (xj, _) = cons.seq[j];
                    let img = b.get(forward[xi], forward[xj]);
                    if forward[x] == usize::MAX {
                        if used[img] || inv_a[x] != inv_b[img] {
                            ok = false;
                            break;
                        }
                        forward[x] = img;
                        used[img] = true;
                        assigned.push(x);
                    } else if forward[x] != img {
                        ok = false;
                        break;
                    }
                }
            }
        }
        if ok {
            if next == cons.seq.len() {
                // all images fixed: final cell-wise verification
                let witness_ok = (0..forward.len()).all(|x| {
                    (0..forward.len())
                        .all(|y| b.get(forward[x], forward[y]) == forward[a.get(x, y)])
                });
                if witness_ok {
                    return true;
                }
            } else {
                let g = cons.seq[next].0;
                for img in 0..forward.len() {
                    if !used[img] && inv_a[g] == inv_b[img] {
                        forward[g] = img;
                        used[img] = true;
                        if assign(a, b, cons, inv_a, inv_b, forward, used, next + 1, gen_idx + 1) {
                            return true;
                        }
                        forward[g] = usize::MAX;
                        used[img] = false;
                    }
                }
            }
        }
        for x in assigned {
            used[forward[x]] = false;
            forward[x] = usize::MAX;
        }
        false
    }

    if assign(a, b, &cons, &inv_a, &inv_b, &mut forward, &mut used, 1, 0) {
        let witness = IsoWitness {
            forward,
            description: format!("generator images over {} generators", cons.generators.len()),
        };
        debug_assert!(witness.verify(a, b));
        Ok(Some(witness))
    } else {
        Ok(None)
    }
}
