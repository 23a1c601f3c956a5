//! The doubled extension `G(α,β,γ,δ)` and its spec-level transforms.
//!
//! Indices `0..n` encode `G`, indices `n..2n` encode the copy `Ḡ` (element
//! `n+k` is the barred copy of `k`). The four quadrants of the `2n x 2n`
//! table are filled by the collapsed multiplications of the four maps:
//!
//! ```text
//! g*h  = α(g,h)        g*h̄  = β(g,h) barred
//! ḡ*h  = γ(g,h) barred  ḡ*h̄  = δ(g,h)
//! ```

use std::fmt;
use std::sync::Arc;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::group::{latin_square_check, FiniteGroup};
use crate::theta::{compose, ThetaMap};
use crate::{Error, MulTable, Result};

/// A group together with the tuple `(α,β,γ,δ)`: the blueprint of one
/// extension. Arbitrary tuples are allowed; whether the result is a loop is a
/// checked property, not an invariant.
#[derive(Clone, Debug)]
pub struct ExtensionSpec {
    pub group: Arc<FiniteGroup>,
    pub alpha: ThetaMap,
    pub beta: ThetaMap,
    pub gamma: ThetaMap,
    pub delta: ThetaMap,
}

impl ExtensionSpec {
    pub fn new(
        group: Arc<FiniteGroup>,
        alpha: ThetaMap,
        beta: ThetaMap,
        gamma: ThetaMap,
        delta: ThetaMap,
    ) -> ExtensionSpec {
        ExtensionSpec { group, alpha, beta, gamma, delta }
    }

    pub fn from_tuple(group: Arc<FiniteGroup>, tuple: [ThetaMap; 4]) -> ExtensionSpec {
        ExtensionSpec::new(group, tuple[0], tuple[1], tuple[2], tuple[3])
    }

    pub fn tuple(&self) -> [ThetaMap; 4] {
        [self.alpha, self.beta, self.gamma, self.delta]
    }

    /// Comma-separated canonical names, e.g. `xy,x-y,yx,yx-`.
    pub fn tuple_token(&self) -> String {
        format!("{},{},{},{}", self.alpha, self.beta, self.gamma, self.delta)
    }

    /// Parses a tuple token; `chein` is accepted as an alias for the Chein
    /// tuple `xy,yx,xy-,y-x`.
    pub fn parse_tuple(token: &str) -> Result<[ThetaMap; 4]> {
        if token == "chein" {
            return Ok(CHEIN_TUPLE);
        }
        let parts: Vec<&str> = token.split(',').collect();
        if parts.len() != 4 {
            return Err(Error::Parse {
                message: format!("expected 4 comma-separated theta names, got '{token}'"),
            });
        }
        Ok([parts[0].parse()?, parts[1].parse()?, parts[2].parse()?, parts[3].parse()?])
    }
}

impl fmt::Display for ExtensionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.group.label(), self.tuple_token())
    }
}

impl Serialize for ExtensionSpec {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("ExtensionSpec", 2)?;
        s.serialize_field("group", self.group.label())?;
        s.serialize_field("tuple", &self.tuple())?;
        s.end()
    }
}

/// The tuple of the Chein construction `M(G,2)`.
pub const CHEIN_TUPLE: [ThetaMap; 4] =
    [ThetaMap::XY, ThetaMap::YX, ThetaMap::XY_INV, ThetaMap::Y_INV_X];

impl PartialEq for ExtensionSpec {
    fn eq(&self, other: &Self) -> bool {
        self.tuple() == other.tuple() && self.group.as_ref() == other.group.as_ref()
    }
}
impl Eq for ExtensionSpec {}

/// A multiplication table on `0..size`, immutable once validated.
///
/// Tables produced by [`build`] additionally satisfy the quadrant closure
/// `G*G ⊆ G`, `G*Ḡ ⊆ Ḡ`, `Ḡ*G ⊆ Ḡ`, `Ḡ*Ḡ ⊆ G` and carry their originating
/// spec; general tables (loaded from files or relabeled) do not.
#[derive(Clone, Debug)]
pub struct MagmaTable {
    size: usize,
    cells: Vec<u16>,
    origin: Option<ExtensionSpec>,
}

impl PartialEq for MagmaTable {
    /// Cell-level equality; provenance is ignored.
    fn eq(&self, other: &Self) -> bool {
        self.size == other.size && self.cells == other.cells
    }
}
impl Eq for MagmaTable {}

impl MulTable for MagmaTable {
    fn size(&self) -> usize {
        self.size
    }
    fn cell(&self, row: usize, col: usize) -> usize {
        self.get(row, col)
    }
}

impl MagmaTable {
    /// Validates a Latin square and wraps it without provenance.
    pub fn from_cells(size: usize, cells: Vec<u16>) -> Result<MagmaTable> {
        if size == 0 {
            return Err(Error::ZeroOrder);
        }
        if cells.len() != size * size {
            return Err(Error::NotSquare { row: 0, len: cells.len(), expected: size * size });
        }
        latin_square_check(size, &cells)?;
        Ok(MagmaTable { size, cells, origin: None })
    }

    /// A group viewed as a plain multiplication table.
    pub fn from_group(g: &FiniteGroup) -> MagmaTable {
        MagmaTable { size: g.order(), cells: g.cells().to_vec(), origin: None }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, a: usize, b: usize) -> usize {
        assert!(a < self.size && b < self.size, "element index out of range");
        self.cells[a * self.size + b] as usize
    }

    pub fn cells(&self) -> &[u16] {
        &self.cells
    }

    pub fn origin(&self) -> Option<&ExtensionSpec> {
        self.origin.as_ref()
    }

    /// The two-sided neutral element, if any. In a Latin square the only
    /// candidate is the unique row holding 0 in column 0.
    pub fn neutral(&self) -> Option<usize> {
        let n = self.size;
        let e = (0..n).find(|&r| self.cells[r * n] == 0)?;
        let row_ok = (0..n).all(|x| self.cells[e * n + x] as usize == x);
        let col_ok = (0..n).all(|x| self.cells[x * n + e] as usize == x);
        (row_ok && col_ok).then_some(e)
    }

    pub fn is_loop(&self) -> bool {
        self.neutral().is_some()
    }

    /// Transposed table. The origin, when present, is rewritten to the
    /// opposite tuple so that provenance stays accurate.
    pub fn transpose(&self) -> MagmaTable {
        let n = self.size;
        let mut cells = vec![0u16; n * n];
        for a in 0..n {
            for b in 0..n {
                cells[a * n + b] = self.cells[b * n + a];
            }
        }
        MagmaTable { size: n, cells, origin: self.origin.as_ref().map(opposite_spec) }
    }

    /// Relabels elements by `perm` (element `x` becomes `perm[x]`).
    pub fn relabel(&self, perm: &[usize]) -> MagmaTable {
        let n = self.size;
        assert_eq!(perm.len(), n);
        let mut seen = vec![false; n];
        for &p in perm {
            assert!(p < n && !seen[p], "relabeling must be a permutation");
            seen[p] = true;
        }
        let mut cells = vec![0u16; n * n];
        for a in 0..n {
            for b in 0..n {
                cells[perm[a] * n + perm[b]] = perm[self.cells[a * n + b] as usize] as u16;
            }
        }
        MagmaTable { size: n, cells, origin: None }
    }
}

impl Serialize for MagmaTable {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<usize>> = (0..self.size)
            .map(|a| (0..self.size).map(|b| self.get(a, b)).collect())
            .collect();
        let mut s = serializer.serialize_struct("MagmaTable", 3)?;
        s.serialize_field("size", &self.size)?;
        s.serialize_field("table", &rows)?;
        s.serialize_field("origin", &self.origin)?;
        s.end()
    }
}

/// Fills the `2n x 2n` table from the four quadrant rules.
///
/// The result is always a quasigroup: each quadrant is a Latin square on its
/// block because every collapsed multiplication is a bijection in each
/// argument separately. Both that and the quadrant closure are asserted.
pub fn build(spec: &ExtensionSpec) -> MagmaTable {
    let g = spec.group.as_ref();
    let n = g.order();
    let size = 2 * n;
    let mut cells = vec![0u16; size * size];
    for a in 0..n {
        for b in 0..n {
            cells[a * size + b] = spec.alpha.apply_delta(a, b, g) as u16;
            cells[a * size + (n + b)] = (n + spec.beta.apply_delta(a, b, g)) as u16;
            cells[(n + a) * size + b] = (n + spec.gamma.apply_delta(a, b, g)) as u16;
            cells[(n + a) * size + (n + b)] = spec.delta.apply_delta(a, b, g) as u16;
        }
    }
    latin_square_check(size, &cells).expect("extension tables are Latin squares");
    MagmaTable { size, cells, origin: Some(spec.clone()) }
}

/// The Chein loop `M(G,2)`.
pub fn chein(group: Arc<FiniteGroup>) -> MagmaTable {
    build(&ExtensionSpec::from_tuple(group, CHEIN_TUPLE))
}

/// The tuple of the opposite magma over the same group: swapping arguments
/// exchanges the two mixed quadrants and pre-swaps the inputs of every slot,
/// so that `build(opposite_spec(s))` is the transpose of `build(s)`.
pub fn opposite_spec(spec: &ExtensionSpec) -> ExtensionSpec {
    let yx = ThetaMap::YX;
    ExtensionSpec {
        group: Arc::clone(&spec.group),
        alpha: compose(spec.alpha, yx),
        beta: compose(spec.gamma, yx),
        gamma: compose(spec.beta, yx),
        delta: compose(spec.delta, yx),
    }
}

/// Re-expresses the same magma over the opposite group: collapsing through
/// the reversed product undoes an output swap, so post-composing every slot
/// with the swap map leaves each quadrant value unchanged cell for cell.
pub fn express_over_opposite(spec: &ExtensionSpec) -> ExtensionSpec {
    let yx = ThetaMap::YX;
    ExtensionSpec {
        group: Arc::new(spec.group.opposite()),
        alpha: compose(yx, spec.alpha),
        beta: compose(yx, spec.beta),
        gamma: compose(yx, spec.gamma),
        delta: compose(yx, spec.delta),
    }
}

/// A verified isomorphism between two tables of equal size.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsoWitness {
    /// Image notation: element `x` of the source maps to `forward[x]`.
    pub forward: Vec<usize>,
    pub description: String,
}

impl IsoWitness {
    /// Whether applying the witness cell-wise maps `src` onto `dst`.
    pub fn verify(&self, src: &MagmaTable, dst: &MagmaTable) -> bool {
        let n = src.size();
        if dst.size() != n || self.forward.len() != n {
            return false;
        }
        let mut seen = vec![false; n];
        for &p in &self.forward {
            if p >= n || seen[p] {
                return false;
            }
            seen[p] = true;
        }
        (0..n).all(|a| {
            (0..n).all(|b| dst.get(self.forward[a], self.forward[b]) == self.forward[src.get(a, b)])
        })
    }

    /// One-line image notation, e.g. `0 1 3 2`.
    pub fn image_line(&self) -> String {
        self.forward.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
    }
}

const BETA_PAIRS: [(ThetaMap, ThetaMap); 4] = [
    (ThetaMap::XY, ThetaMap::YX_INV),
    (ThetaMap::YX, ThetaMap::X_INV_Y),
    (ThetaMap::X_INV_Y, ThetaMap::YX),
    (ThetaMap::YX_INV, ThetaMap::XY),
];

const GAMMA_PAIRS: [(ThetaMap, ThetaMap); 4] = [
    (ThetaMap::XY, ThetaMap::Y_INV_X),
    (ThetaMap::YX, ThetaMap::XY_INV),
    (ThetaMap::XY_INV, ThetaMap::YX),
    (ThetaMap::Y_INV_X, ThetaMap::XY),
];

/// Rewrites a spec into an isomorphic one with traded β/γ slots.
///
/// The β slot moves along the pairs (xy ↔ yx-), (yx ↔ x-y); the γ slot along
/// (xy ↔ y-x), (yx ↔ xy-); δ is post-composed with the both-coordinates
/// inversion. The witness is the permutation fixing `G` and inverting the
/// barred copy, and it is verified cell-wise before being returned. Tuples
/// whose β or γ lies outside the listed pairs are rejected.
pub fn lemma_iso_transform(spec: &ExtensionSpec) -> Result<(ExtensionSpec, IsoWitness)> {
    let beta2 = BETA_PAIRS.iter().find(|(from, _)| *from == spec.beta).map(|&(_, to)| to);
    let gamma2 = GAMMA_PAIRS.iter().find(|(from, _)| *from == spec.gamma).map(|&(_, to)| to);
    let (beta2, gamma2) = match (beta2, gamma2) {
        (Some(b), Some(c)) => (b, c),
        _ => {
            return Err(Error::TransformDomain {
                beta: spec.beta.name().to_string(),
                gamma: spec.gamma.name().to_string(),
            })
        }
    };
    let transformed = ExtensionSpec {
        group: Arc::clone(&spec.group),
        alpha: spec.alpha,
        beta: beta2,
        gamma: gamma2,
        delta: compose(ThetaMap::X_INV_Y_INV, spec.delta),
    };
    let g = spec.group.as_ref();
    let n = g.order();
    let forward: Vec<usize> = (0..2 * n).map(|x| if x < n { x } else { n + g.inv(x - n) }).collect();
    let witness =
        IsoWitness { forward, description: "f(x) = x, f(x̄) = overline(x^-1)".to_string() };
    let src = build(spec);
    let dst = build(&transformed);
    assert!(witness.verify(&src, &dst), "transform witness must map source onto target");
    Ok((transformed, witness))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{make_cyclic, make_symmetric};

    fn c4() -> Arc<FiniteGroup> {
        Arc::new(make_cyclic(4).unwrap())
    }

    fn s3() -> Arc<FiniteGroup> {
        Arc::new(make_symmetric(3).unwrap())
    }

    fn spec(g: &Arc<FiniteGroup>, t: [&str; 4]) -> ExtensionSpec {
        ExtensionSpec::new(
            Arc::clone(g),
            t[0].parse().unwrap(),
            t[1].parse().unwrap(),
            t[2].parse().unwrap(),
            t[3].parse().unwrap(),
        )
    }

    #[test]
    fn quadrant_closure() {
        let g = s3();
        let n = g.order();
        for alpha in ThetaMap::ALL {
            let s = ExtensionSpec::new(Arc::clone(&g), alpha, ThetaMap::YX_INV, ThetaMap::Y_INV_X, alpha);
            let t = build(&s);
            for a in 0..n {
                for b in 0..n {
                    assert!(t.get(a, b) < n);
                    assert!(t.get(a, n + b) >= n);
                    assert!(t.get(n + a, b) >= n);
                    assert!(t.get(n + a, n + b) < n);
                }
            }
        }
    }

    #[test]
    fn plain_tuple_is_direct_product_with_c2() {
        let g = s3();
        let t = build(&spec(&g, ["xy", "xy", "xy", "xy"]));
        let n = g.order();
        for a in 0..n {
            for b in 0..n {
                let p = g.mul(a, b);
                assert_eq!(t.get(a, b), p);
                assert_eq!(t.get(a, n + b), n + p);
                assert_eq!(t.get(n + a, b), n + p);
                assert_eq!(t.get(n + a, n + b), p);
            }
        }
    }

    #[test]
    fn restriction_to_first_block_is_the_group() {
        let g = s3();
        let t = chein(Arc::clone(&g));
        for a in 0..g.order() {
            for b in 0..g.order() {
                assert_eq!(t.get(a, b), g.mul(a, b));
            }
        }
    }

    #[test]
    fn chein_of_trivial_group_is_c2() {
        let c1 = Arc::new(make_cyclic(1).unwrap());
        let t = chein(c1);
        assert_eq!(t.cells(), &[0, 1, 1, 0]);
    }

    #[test]
    fn opposite_spec_builds_the_transpose() {
        let g = c4();
        let s = spec(&g, ["xy", "xy", "xy", "x-y"]);
        let op = opposite_spec(&s);
        assert_eq!(op.beta, compose(s.gamma, ThetaMap::YX));
        assert_eq!(op.gamma, compose(s.beta, ThetaMap::YX));
        assert_eq!(build(&op).cells(), build(&s).transpose().cells());
        assert_eq!(opposite_spec(&op).tuple(), s.tuple());

        let h = s3();
        let s = spec(&h, ["yx", "yx-", "xy-", "y-x-"]);
        assert_eq!(build(&opposite_spec(&s)).cells(), build(&s).transpose().cells());
        assert_eq!(opposite_spec(&opposite_spec(&s)).tuple(), s.tuple());
    }

    #[test]
    fn express_over_opposite_round_trips() {
        for g in [c4(), s3()] {
            for t in [["xy", "yx", "xy-", "y-x"], ["xy", "x-y", "yx", "yx-"], ["yx", "yx-", "y-x", "x-y-"]] {
                let s = spec(&g, t);
                let over_op = express_over_opposite(&s);
                assert_eq!(build(&over_op).cells(), build(&s).cells());
            }
        }
    }

    #[test]
    fn iso_transform_matches_listed_pairs() {
        let g = c4();
        // The Chein tuple written over an abelian group transforms into the
        // beta-inverted diagonal form.
        let s = spec(&g, ["xy", "yx", "xy-", "y-x"]);
        let (t, w) = lemma_iso_transform(&s).unwrap();
        assert_eq!(t.tuple_token(), "xy,x-y,yx,yx-");
        assert!(w.verify(&build(&s), &build(&t)));

        // Round-trip back to the Chein tuple from the nonabelian Moufang form.
        let h = s3();
        let s = spec(&h, ["xy", "x-y", "yx", "yx-"]);
        let (t, w) = lemma_iso_transform(&s).unwrap();
        assert_eq!(t.tuple(), CHEIN_TUPLE);
        assert!(w.verify(&build(&s), &build(&t)));
    }

    #[test]
    fn iso_transform_rejects_out_of_domain_tuples() {
        let g = c4();
        let s = spec(&g, ["xy", "xy-", "xy", "xy"]);
        assert!(matches!(lemma_iso_transform(&s), Err(Error::TransformDomain { .. })));
    }

    #[test]
    fn aux_identities_behind_the_transform() {
        // (β(x,y))^-1 = β'(x, y^-1) and (γ(x,y))^-1 = γ'(x^-1, y)
        for g in [c4(), s3()] {
            for (b, b2) in BETA_PAIRS {
                for x in 0..g.order() {
                    for y in 0..g.order() {
                        assert_eq!(
                            g.inv(b.apply_delta(x, y, &g)),
                            b2.apply_delta(x, g.inv(y), &g)
                        );
                    }
                }
            }
            for (c, c2) in GAMMA_PAIRS {
                for x in 0..g.order() {
                    for y in 0..g.order() {
                        assert_eq!(
                            g.inv(c.apply_delta(x, y, &g)),
                            c2.apply_delta(g.inv(x), y, &g)
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn tuple_token_round_trip() {
        let tuple = ExtensionSpec::parse_tuple("xy,x-y,yx,yx-").unwrap();
        assert_eq!(tuple, [ThetaMap::XY, ThetaMap::X_INV_Y, ThetaMap::YX, ThetaMap::YX_INV]);
        assert_eq!(ExtensionSpec::parse_tuple("chein").unwrap(), CHEIN_TUPLE);
        assert!(ExtensionSpec::parse_tuple("xy,xy").is_err());
        assert!(ExtensionSpec::parse_tuple("xy,xy,xy,zz").is_err());
    }
}
