//! Finite groups as validated Cayley tables.
//!
//! Elements are dense indices `0..n-1` and the neutral element is always
//! index 0 after validation. Tables are immutable once constructed, so a
//! [`FiniteGroup`] can be shared freely across parallel workers.

use crate::{Error, MulTable, Result};

/// Full associativity validation is cubic; constructors skip it above this
/// order (their tables are associative by construction). Untrusted input via
/// [`FiniteGroup::from_cayley_table`] is always checked in full.
const ASSOC_CHECK_CAP: usize = 1024;

const MAX_ORDER: usize = u16::MAX as usize;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
struct Cached {
    abelian: bool,
    squares_central: bool,
    exponent4: bool,
    elementary_abelian_2: bool,
}

/// A finite group given by its Cayley table.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<u16>,
    inverses: Vec<u16>,
    label: String,
    cached: Cached,
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.table == other.table
    }
}
impl Eq for FiniteGroup {}

impl MulTable for FiniteGroup {
    fn size(&self) -> usize {
        self.order
    }
    fn cell(&self, row: usize, col: usize) -> usize {
        self.mul(row, col)
    }
}

impl FiniteGroup {
    /// Validates an untrusted square table and returns the group it defines.
    ///
    /// If the neutral element is not at index 0 the table is relabeled by the
    /// transposition `0 <-> e` and the label records that permutation.
    pub fn from_cayley_table(raw: &[Vec<usize>]) -> Result<FiniteGroup> {
        let n = raw.len();
        if n == 0 {
            return Err(Error::ZeroOrder);
        }
        if n > MAX_ORDER {
            return Err(Error::OrderTooLarge { order: n, max: MAX_ORDER });
        }
        for (row, r) in raw.iter().enumerate() {
            if r.len() != n {
                return Err(Error::NotSquare { row, len: r.len(), expected: n });
            }
            for (col, &v) in r.iter().enumerate() {
                if v >= n {
                    return Err(Error::ValueOutOfRange { row, col, value: v, order: n });
                }
            }
        }
        let flat: Vec<u16> = raw.iter().flatten().map(|&v| v as u16).collect();
        latin_square_check(n, &flat)?;
        let neutral = (0..n)
            .find(|&e| (0..n).all(|x| raw[e][x] == x && raw[x][e] == x))
            .ok_or(Error::NoNeutral)?;
        let mut table = vec![0u16; n * n];
        let swap = |x: usize| -> usize {
            if x == 0 {
                neutral
            } else if x == neutral {
                0
            } else {
                x
            }
        };
        for a in 0..n {
            for b in 0..n {
                table[a * n + b] = swap(raw[swap(a)][swap(b)]) as u16;
            }
        }
        let label = if neutral == 0 {
            format!("table(order {n})")
        } else {
            format!("table(order {n}, relabeled 0<->{neutral})")
        };
        validate(n, table, label, true)
    }

    pub(crate) fn from_parts(order: usize, table: Vec<u16>, label: String) -> Result<FiniteGroup> {
        validate(order, table, label, order <= ASSOC_CHECK_CAP)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> FiniteGroup {
        self.label = label.into();
        self
    }

    /// Row-major cells; `a*b` sits at `a * order + b`.
    pub fn cells(&self) -> &[u16] {
        &self.table
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        assert!(a < self.order && b < self.order, "element index out of range");
        self.table[a * self.order + b] as usize
    }

    pub fn inv(&self, a: usize) -> usize {
        assert!(a < self.order, "element index out of range");
        self.inverses[a] as usize
    }

    /// The neutral element, index 0 by construction.
    pub fn neutral(&self) -> usize {
        0
    }

    pub fn pow(&self, a: usize, m: usize) -> usize {
        let mut acc = 0;
        for _ in 0..m {
            acc = self.mul(acc, a);
        }
        acc
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut acc = self.mul(0, a);
        let mut k = 1;
        while acc != 0 {
            acc = self.mul(acc, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        self.cached.abelian
    }

    /// Whether every square lies in the center, i.e. `G/Z(G)` is an
    /// elementary abelian 2-group.
    pub fn squares_central(&self) -> bool {
        self.cached.squares_central
    }

    pub fn exponent_divides(&self, m: usize) -> bool {
        if m == 4 {
            return self.cached.exponent4;
        }
        (0..self.order).all(|g| self.pow(g, m) == 0)
    }

    pub fn is_elementary_abelian_2(&self) -> bool {
        self.cached.elementary_abelian_2
    }

    /// Order > 1 and not an elementary abelian 2-group. Below this threshold
    /// every twisted multiplication collapses to the plain product and the
    /// whole tuple space degenerates to the direct product with C2.
    pub fn admissible_base(&self) -> bool {
        self.order > 1 && !self.cached.elementary_abelian_2
    }

    /// The opposite group: same elements, transposed table.
    pub fn opposite(&self) -> FiniteGroup {
        let n = self.order;
        let mut table = vec![0u16; n * n];
        for a in 0..n {
            for b in 0..n {
                table[a * n + b] = self.table[b * n + a];
            }
        }
        validate(n, table, format!("{}^op", self.label), n <= ASSOC_CHECK_CAP)
            .expect("opposite of a valid group is a valid group")
    }

    /// `{ g^m : g in G }`.
    pub fn power_subset(&self, m: usize) -> ElementSubset {
        ElementSubset::new(self.order, (0..self.order).map(|g| self.pow(g, m)))
    }

    /// `{ g : g^m = e }`.
    pub fn torsion_subset(&self, m: usize) -> ElementSubset {
        ElementSubset::new(self.order, (0..self.order).filter(|&g| self.pow(g, m) == 0))
    }

    pub fn center(&self) -> ElementSubset {
        let n = self.order;
        ElementSubset::new(
            n,
            (0..n).filter(|&g| (0..n).all(|h| self.mul(g, h) == self.mul(h, g))),
        )
    }
}

/// A subset of the elements of a group, kept sorted and duplicate-free.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElementSubset {
    parent_order: usize,
    members: Vec<usize>,
}

impl ElementSubset {
    fn new(parent_order: usize, iter: impl IntoIterator<Item = usize>) -> ElementSubset {
        let mut members: Vec<usize> = iter.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        assert!(members.iter().all(|&m| m < parent_order));
        ElementSubset { parent_order, members }
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    /// Whether the subset is all of the parent group.
    pub fn is_all(&self) -> bool {
        self.members.len() == self.parent_order
    }
}

fn validate(order: usize, table: Vec<u16>, label: String, check_assoc: bool) -> Result<FiniteGroup> {
    if order == 0 {
        return Err(Error::ZeroOrder);
    }
    if order > MAX_ORDER {
        return Err(Error::OrderTooLarge { order, max: MAX_ORDER });
    }
    latin_square_check(order, &table)?;
    // Neutral must sit at index 0 once relabeling is done.
    for x in 0..order {
        if table[x] as usize != x || table[x * order] as usize != x {
            return Err(Error::NoNeutral);
        }
    }
    if check_assoc {
        for a in 0..order {
            for b in 0..order {
                let ab = table[a * order + b] as usize;
                for c in 0..order {
                    let bc = table[b * order + c] as usize;
                    if table[ab * order + c] != table[a * order + bc] {
                        return Err(Error::NotAssociative { a, b, c });
                    }
                }
            }
        }
    }
    let mut inverses = vec![0u16; order];
    for g in 0..order {
        let h = (0..order)
            .find(|&h| table[g * order + h] == 0)
            .expect("Latin square row contains the neutral");
        debug_assert_eq!(table[h * order + g], 0, "inverses must be two-sided");
        inverses[g] = h as u16;
    }
    let mut group = FiniteGroup { order, table, inverses, label, cached: Cached::default() };
    group.cached = compute_cached(&group);
    Ok(group)
}

pub(crate) fn latin_square_check(n: usize, table: &[u16]) -> Result<()> {
    assert_eq!(table.len(), n * n);
    let mut seen = vec![usize::MAX; n];
    for r in 0..n {
        for c in 0..n {
            let v = table[r * n + c] as usize;
            if v >= n {
                return Err(Error::ValueOutOfRange { row: r, col: c, value: v, order: n });
            }
            if seen[v] == r {
                return Err(Error::NotLatinSquare { axis: "row", index: r, position: c, value: v });
            }
            seen[v] = r;
        }
    }
    seen.fill(usize::MAX);
    for c in 0..n {
        for r in 0..n {
            let v = table[r * n + c] as usize;
            if seen[v] == c {
                return Err(Error::NotLatinSquare { axis: "column", index: c, position: r, value: v });
            }
            seen[v] = c;
        }
    }
    Ok(())
}

fn compute_cached(g: &FiniteGroup) -> Cached {
    let n = g.order;
    let abelian = (0..n).all(|a| (a..n).all(|b| g.mul(a, b) == g.mul(b, a)));
    let squares_central = (0..n).all(|a| {
        let s = g.mul(a, a);
        (0..n).all(|h| g.mul(s, h) == g.mul(h, s))
    });
    let exponent4 = (0..n).all(|a| g.pow(a, 4) == 0);
    let elementary_abelian_2 = (0..n).all(|a| g.mul(a, a) == 0);
    Cached { abelian, squares_central, exponent4, elementary_abelian_2 }
}

/// The cyclic group of order `n` with `i*j = (i+j) mod n`.
pub fn make_cyclic(n: usize) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(Error::ZeroOrder);
    }
    if n > MAX_ORDER {
        return Err(Error::OrderTooLarge { order: n, max: MAX_ORDER });
    }
    let mut table = vec![0u16; n * n];
    for a in 0..n {
        for b in 0..n {
            table[a * n + b] = ((a + b) % n) as u16;
        }
    }
    FiniteGroup::from_parts(n, table, format!("C{n}"))
}

/// The dihedral group of the given (even) order `2k`.
///
/// Elements `0..k` are the rotations `r^i`, elements `k..2k` are `s r^i`,
/// with the convention `s r^i * s r^j = r^(j-i)`.
pub fn make_dihedral(order: usize) -> Result<FiniteGroup> {
    if order < 2 || order % 2 != 0 {
        return Err(Error::OddDihedralOrder { order });
    }
    if order > MAX_ORDER {
        return Err(Error::OrderTooLarge { order, max: MAX_ORDER });
    }
    let k = order / 2;
    let mut table = vec![0u16; order * order];
    let rot = |i: isize| -> usize { i.rem_euclid(k as isize) as usize };
    for a in 0..order {
        for b in 0..order {
            let (ai, aref) = if a < k { (a, false) } else { (a - k, true) };
            let (bi, bref) = if b < k { (b, false) } else { (b - k, true) };
            let v = match (aref, bref) {
                (false, false) => rot((ai + bi) as isize),
                // r^i * s r^j = s r^(j-i)
                (false, true) => k + rot(bi as isize - ai as isize),
                // s r^i * r^j = s r^(i+j)
                (true, false) => k + rot((ai + bi) as isize),
                // s r^i * s r^j = r^(j-i)
                (true, true) => rot(bi as isize - ai as isize),
            };
            table[a * order + b] = v as u16;
        }
    }
    FiniteGroup::from_parts(order, table, format!("D{order}"))
}

/// The quaternion group of order 8, elements 1, i, j, k, -1, -i, -j, -k.
pub fn make_quaternion8() -> FiniteGroup {
    // basis products: basis_mul[a][b] = (sign, basis) for a*b over {1,i,j,k}
    const BASIS: [[(bool, usize); 4]; 4] = [
        [(false, 0), (false, 1), (false, 2), (false, 3)],
        [(false, 1), (true, 0), (false, 3), (true, 2)],
        [(false, 2), (true, 3), (true, 0), (false, 1)],
        [(false, 3), (false, 2), (true, 1), (true, 0)],
    ];
    let mut table = vec![0u16; 64];
    for a in 0..8 {
        for b in 0..8 {
            let (sa, ba) = (a >= 4, a % 4);
            let (sb, bb) = (b >= 4, b % 4);
            let (sp, bp) = BASIS[ba][bb];
            let neg = sa ^ sb ^ sp;
            table[a * 8 + b] = (bp + if neg { 4 } else { 0 }) as u16;
        }
    }
    FiniteGroup::from_parts(8, table, "Q8".to_string()).expect("quaternion table is a group")
}

/// The symmetric group on `k` letters, permutations indexed in lexicographic
/// order of their one-line notation; product is composition `(p*q)(x) = p(q(x))`.
pub fn make_symmetric(k: usize) -> Result<FiniteGroup> {
    if k == 0 {
        return Err(Error::ZeroOrder);
    }
    if k > 7 {
        return Err(Error::SymmetricDegreeTooLarge { degree: k, max: 7 });
    }
    let mut perms: Vec<Vec<usize>> = Vec::new();
    let mut p: Vec<usize> = (0..k).collect();
    loop {
        perms.push(p.clone());
        if !next_permutation(&mut p) {
            break;
        }
    }
    let n = perms.len();
    let rank = |p: &[usize]| -> usize {
        perms.binary_search_by(|q| q.as_slice().cmp(p)).expect("permutation present")
    };
    let mut table = vec![0u16; n * n];
    let mut buf = vec![0usize; k];
    for a in 0..n {
        for b in 0..n {
            for x in 0..k {
                buf[x] = perms[a][perms[b][x]];
            }
            table[a * n + b] = rank(&buf) as u16;
        }
    }
    FiniteGroup::from_parts(n, table, format!("S{k}"))
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Componentwise product on pairs, indexed `a`-major: `(i,j) -> i*|B| + j`.
pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> FiniteGroup {
    let (na, nb) = (a.order, b.order);
    let n = na * nb;
    assert!(n <= MAX_ORDER, "product order {n} exceeds supported maximum");
    let mut table = vec![0u16; n * n];
    for i1 in 0..na {
        for j1 in 0..nb {
            let x = i1 * nb + j1;
            for i2 in 0..na {
                for j2 in 0..nb {
                    let y = i2 * nb + j2;
                    table[x * n + y] = (a.mul(i1, i2) * nb + b.mul(j1, j2)) as u16;
                }
            }
        }
    }
    FiniteGroup::from_parts(n, table, format!("{}x{}", a.label, b.label))
        .expect("direct product of groups is a group")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_basics() {
        assert!(matches!(make_cyclic(0), Err(Error::ZeroOrder)));
        let c1 = make_cyclic(1).unwrap();
        assert_eq!(c1.cells(), &[0]);
        let c4 = make_cyclic(4).unwrap();
        assert_eq!(&c4.cells()[4..8], &[1, 2, 3, 0]);
        assert!(c4.is_abelian());
        assert_eq!(c4.inv(1), 3);
        assert_eq!(c4.element_order(1), 4);
    }

    #[test]
    fn elementary_abelian_detection() {
        let c2 = make_cyclic(2).unwrap();
        let v4 = direct_product(&c2, &c2);
        assert_eq!(v4.order(), 4);
        assert!(v4.is_elementary_abelian_2());
        assert!(!v4.admissible_base());
        assert!(v4.torsion_subset(2).is_all());
        let c4 = make_cyclic(4).unwrap();
        assert!(!c4.is_elementary_abelian_2());
        assert_eq!(c4.is_elementary_abelian_2(), c4.torsion_subset(2).is_all());
    }

    #[test]
    fn dihedral_structure() {
        // Independent scans over the raw table, frozen expectations.
        let d8 = make_dihedral(8).unwrap();
        let n = d8.order();
        let center: Vec<usize> = (0..n)
            .filter(|&g| (0..n).all(|h| d8.mul(g, h) == d8.mul(h, g)))
            .collect();
        assert_eq!(center.len(), 2);
        assert_eq!(d8.center().members(), center.as_slice());
        let torsion2 = (0..n).filter(|&g| d8.mul(g, g) == 0).count();
        assert_eq!(torsion2, 6);
        assert_eq!(d8.torsion_subset(2).len(), 6);
        assert!(d8.squares_central());
        assert!(d8.exponent_divides(4));
        assert!(!d8.is_abelian());
        // s r^i * s r^j = r^(j-i): with k = 4, indices 4..8 are s r^(i-4)
        assert_eq!(d8.mul(5, 6), 1);
        assert_eq!(d8.mul(6, 5), 3);
        assert!(matches!(make_dihedral(7), Err(Error::OddDihedralOrder { .. })));
    }

    #[test]
    fn symmetric_structure() {
        let s3 = make_symmetric(3).unwrap();
        assert_eq!(s3.order(), 6);
        assert!(!s3.is_abelian());
        assert!(!s3.squares_central());
        let center = s3.center();
        assert_eq!(center.members(), &[0]);
    }

    #[test]
    fn quaternion_structure() {
        let q8 = make_quaternion8();
        assert!(q8.squares_central());
        assert!(q8.exponent_divides(4));
        assert!(!q8.is_abelian());
        assert_eq!(q8.torsion_subset(2).len(), 2);
        assert_eq!(q8.center().len(), 2);
        // i * j = k, j * i = -k
        assert_eq!(q8.mul(1, 2), 3);
        assert_eq!(q8.mul(2, 1), 7);
    }

    #[test]
    fn power_subset_of_c4() {
        let c4 = make_cyclic(4).unwrap();
        assert_eq!(c4.power_subset(2).members(), &[0, 2]);
    }

    #[test]
    fn opposite_group_laws() {
        let c4 = make_cyclic(4).unwrap();
        assert_eq!(c4.opposite().cells(), c4.cells());
        for g in [make_dihedral(8).unwrap(), make_symmetric(3).unwrap(), make_quaternion8()] {
            let op = g.opposite();
            assert_eq!(op.opposite().cells(), g.cells());
            // x -> x^-1 is an isomorphism from G onto G^op
            for a in 0..g.order() {
                for b in 0..g.order() {
                    assert_eq!(op.mul(g.inv(a), g.inv(b)), g.inv(g.mul(a, b)));
                }
            }
        }
    }

    #[test]
    fn from_cayley_table_relabels_neutral() {
        // C3 written with neutral at index 2
        let raw = vec![vec![1, 2, 0], vec![2, 0, 1], vec![0, 1, 2]];
        let g = FiniteGroup::from_cayley_table(&raw).unwrap();
        assert_eq!(g.mul(0, 0), 0);
        assert!(g.label().contains("relabeled 0<->2"));
        assert_eq!(g.element_order(1), 3);
    }

    #[test]
    fn from_cayley_table_rejects_bad_input() {
        let repeated_row = vec![vec![0, 1], vec![0, 1]];
        assert!(matches!(
            FiniteGroup::from_cayley_table(&repeated_row),
            Err(Error::NotLatinSquare { .. })
        ));
        let not_square = vec![vec![0, 1], vec![1]];
        assert!(matches!(FiniteGroup::from_cayley_table(&not_square), Err(Error::NotSquare { .. })));
        // Latin square with a neutral but not associative (order 5 quasigroup)
        let quasigroup = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 3, 4, 0, 1],
            vec![3, 4, 1, 2, 0],
            vec![4, 2, 0, 1, 3],
        ];
        assert!(matches!(
            FiniteGroup::from_cayley_table(&quasigroup),
            Err(Error::NotAssociative { .. })
        ));
        // No neutral at all
        let no_neutral = vec![vec![1, 0], vec![0, 1]];
        assert!(matches!(FiniteGroup::from_cayley_table(&no_neutral), Err(Error::NoNeutral)));
    }

    #[test]
    fn constructor_invariants_hold() {
        for g in [
            make_cyclic(6).unwrap(),
            make_dihedral(8).unwrap(),
            make_symmetric(3).unwrap(),
            make_quaternion8(),
            direct_product(&make_cyclic(4).unwrap(), &make_cyclic(2).unwrap()),
        ] {
            let n = g.order();
            latin_square_check(n, g.cells()).unwrap();
            for a in 0..n {
                assert_eq!(g.mul(0, a), a);
                assert_eq!(g.mul(a, 0), a);
                assert_eq!(g.mul(g.inv(a), a), 0);
                assert_eq!(g.mul(a, g.inv(a)), 0);
                for b in 0..n {
                    for c in 0..n {
                        assert_eq!(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c)));
                    }
                }
            }
        }
    }
}
