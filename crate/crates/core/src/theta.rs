//! The eight coordinate maps on `G x G` and their composition group.
//!
//! The two generators are the swap `(a,b) -> (b,a)` and the inversion
//! `(a,b) -> (a,b^-1)`. Closing under composition gives eight maps; each one
//! picks its output coordinates from the inputs with optional inversion.
//! Collapsing a map through the product `(u,v) -> u*v` turns it into a
//! twisted binary multiplication on `G`.

use std::fmt;
use std::str::FromStr;

use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use crate::group::FiniteGroup;
use crate::{Error, Result};

/// One of the eight maps `G x G -> G x G`.
///
/// `swap` takes the first output coordinate from the second input;
/// `inv_first` / `inv_second` invert the first / second output coordinate.
/// The canonical ASCII names are `xy`, `xy-`, `x-y`, `x-y-`, `yx`, `yx-`,
/// `y-x`, `y-x-`, where `x`/`y` stand for the first/second input and a
/// trailing `-` inverts the coordinate it follows. For example `y-x` is the
/// map `(a,b) -> (b^-1, a)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct ThetaMap {
    swap: bool,
    inv_first: bool,
    inv_second: bool,
}

impl ThetaMap {
    pub const XY: ThetaMap = ThetaMap::new(false, false, false);
    pub const XY_INV: ThetaMap = ThetaMap::new(false, false, true);
    pub const X_INV_Y: ThetaMap = ThetaMap::new(false, true, false);
    pub const X_INV_Y_INV: ThetaMap = ThetaMap::new(false, true, true);
    pub const YX: ThetaMap = ThetaMap::new(true, false, false);
    pub const YX_INV: ThetaMap = ThetaMap::new(true, false, true);
    pub const Y_INV_X: ThetaMap = ThetaMap::new(true, true, false);
    pub const Y_INV_X_INV: ThetaMap = ThetaMap::new(true, true, true);

    /// All eight maps in the fixed order used for tuple indexing and reports.
    pub const ALL: [ThetaMap; 8] = [
        ThetaMap::XY,
        ThetaMap::XY_INV,
        ThetaMap::X_INV_Y,
        ThetaMap::X_INV_Y_INV,
        ThetaMap::YX,
        ThetaMap::YX_INV,
        ThetaMap::Y_INV_X,
        ThetaMap::Y_INV_X_INV,
    ];

    const fn new(swap: bool, inv_first: bool, inv_second: bool) -> ThetaMap {
        ThetaMap { swap, inv_first, inv_second }
    }

    pub fn name(self) -> &'static str {
        match (self.swap, self.inv_first, self.inv_second) {
            (false, false, false) => "xy",
            (false, false, true) => "xy-",
            (false, true, false) => "x-y",
            (false, true, true) => "x-y-",
            (true, false, false) => "yx",
            (true, false, true) => "yx-",
            (true, true, false) => "y-x",
            (true, true, true) => "y-x-",
        }
    }

    pub fn index(self) -> usize {
        ((self.swap as usize) << 2) | ((self.inv_first as usize) << 1) | self.inv_second as usize
    }

    pub fn from_index(index: usize) -> ThetaMap {
        assert!(index < 8, "theta index out of range");
        ThetaMap::ALL[index]
    }

    pub fn swaps(self) -> bool {
        self.swap
    }

    /// Whether the first input appears inverted in the output.
    pub fn inverts_first_input(self) -> bool {
        if self.swap {
            self.inv_second
        } else {
            self.inv_first
        }
    }

    /// Whether the second input appears inverted in the output.
    pub fn inverts_second_input(self) -> bool {
        if self.swap {
            self.inv_first
        } else {
            self.inv_second
        }
    }

    /// The pair action on `(a, b)`.
    ///
    /// Panics if an index is out of range for `g`.
    pub fn apply_pair(self, a: usize, b: usize, g: &FiniteGroup) -> (usize, usize) {
        let (p, q) = if self.swap { (b, a) } else { (a, b) };
        let p = if self.inv_first { g.inv(p) } else { p };
        let q = if self.inv_second { g.inv(q) } else { q };
        (p, q)
    }

    /// The collapsed multiplication: product in `g` of the pair action.
    pub fn apply_delta(self, a: usize, b: usize, g: &FiniteGroup) -> usize {
        let (p, q) = self.apply_pair(a, b, g);
        g.mul(p, q)
    }
}

impl fmt::Display for ThetaMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ThetaMap {
    type Err = Error;

    fn from_str(s: &str) -> Result<ThetaMap> {
        ThetaMap::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| Error::Parse { message: format!("unknown theta map '{s}'") })
    }
}

impl Serialize for ThetaMap {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.name())
    }
}

impl<'de> Deserialize<'de> for ThetaMap {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<ThetaMap, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(de::Error::custom)
    }
}

/// Standard function composition: `compose(outer, inner)` applies `inner`
/// first. The result is again one of the eight maps.
pub fn compose(outer: ThetaMap, inner: ThetaMap) -> ThetaMap {
    let swap = inner.swap ^ outer.swap;
    let (inv_first, inv_second) = if outer.swap {
        (inner.inv_second ^ outer.inv_first, inner.inv_first ^ outer.inv_second)
    } else {
        (inner.inv_first ^ outer.inv_first, inner.inv_second ^ outer.inv_second)
    };
    ThetaMap { swap, inv_first, inv_second }
}

/// The composition table of the eight maps, validated as a group.
/// Row `s`, column `t` holds `compose(s, t)`, indexed per [`ThetaMap::ALL`].
pub fn composition_group() -> FiniteGroup {
    let mut table = vec![0u16; 64];
    for (i, s) in ThetaMap::ALL.into_iter().enumerate() {
        for (j, t) in ThetaMap::ALL.into_iter().enumerate() {
            table[i * 8 + j] = compose(s, t).index() as u16;
        }
    }
    FiniteGroup::from_parts(8, table, "Theta".to_string())
        .expect("the eight maps close into a group under composition")
}

/// Orbit of `{a, b}` under composition.
pub fn generated_by(a: ThetaMap, b: ThetaMap) -> Vec<ThetaMap> {
    let mut seen = [false; 8];
    seen[ThetaMap::XY.index()] = true;
    seen[a.index()] = true;
    seen[b.index()] = true;
    loop {
        let current: Vec<ThetaMap> =
            ThetaMap::ALL.into_iter().filter(|t| seen[t.index()]).collect();
        let mut grew = false;
        for &s in &current {
            for &t in &current {
                let c = compose(s, t);
                if !seen[c.index()] {
                    seen[c.index()] = true;
                    grew = true;
                }
            }
        }
        if !grew {
            return ThetaMap::ALL.into_iter().filter(|t| seen[t.index()]).collect();
        }
    }
}

/// Computed structure of the composition group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ThetaProfile {
    pub order: usize,
    /// Element orders in [`ThetaMap::ALL`] order.
    pub element_orders: Vec<usize>,
    /// Which standard order-8 group has the same order profile.
    pub isomorphism_type: &'static str,
    pub abelian: bool,
}

/// Builds the full composition table, asserts it is a group of order 8, and
/// reports the multiset of element orders together with the standard order-8
/// group matching that profile.
pub fn theta_group_profile() -> ThetaProfile {
    let g = composition_group();
    assert_eq!(g.order(), 8);
    let element_orders: Vec<usize> = (0..8).map(|i| g.element_order(i)).collect();
    let mut multiset = element_orders.clone();
    multiset.sort_unstable();
    let isomorphism_type = match multiset.as_slice() {
        [1, 2, 2, 2, 2, 2, 2, 2] => "C2xC2xC2",
        [1, 2, 2, 2, 4, 4, 4, 4] => "C4xC2",
        [1, 2, 2, 2, 2, 2, 4, 4] => "D8",
        [1, 2, 4, 4, 4, 4, 4, 4] => "Q8",
        [1, 2, 4, 4, 8, 8, 8, 8] => "C8",
        _ => "unrecognized",
    };
    ThetaProfile { order: g.order(), element_orders, isomorphism_type, abelian: g.is_abelian() }
}
