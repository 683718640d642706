//! Pointed-list algebras presented by a left monoid acting on the prefix, a
//! right monoid acting on the suffix and a combining table `g`.
//!
//! The product of `[a₁, …, a̲ᵢ, …, aₙ]` is
//! `g(hL(a₁)·…·hL(aᵢ₋₁), aᵢ, hR(aᵢ₊₁)·…·hR(aₙ))`, where both monoid
//! products are taken in left-to-right order of the list.

use crate::algebra::tables::{close_under, MonoidTable, SemigroupTable};
use crate::elem::{Elem, ElemSet, FnTable};
use crate::error::{Error, Result};
use crate::moconad::MVal;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PointedPresentation {
    carrier: ElemSet,
    left: MonoidTable,
    right: MonoidTable,
    h_left: Vec<u32>,
    h_right: Vec<u32>,
    /// Indexed by `(l · |A| + a) · |R| + r`.
    g: Vec<u32>,
}

impl PointedPresentation {
    /// Builds a presentation from explicit tables. `g` must list every
    /// triple `(l, a, r)` exactly once.
    pub fn new(
        carrier: ElemSet,
        left: MonoidTable,
        right: MonoidTable,
        h_left: &FnTable,
        h_right: &FnTable,
        g: &[((Elem, Elem, Elem), Elem)],
    ) -> Result<PointedPresentation> {
        if carrier.is_empty() {
            return Err(Error::Structure("carrier must be nonempty".into()));
        }
        let index_map = |h: &FnTable, target: &ElemSet, what: &str| -> Result<Vec<u32>> {
            if h.domain() != &carrier {
                return Err(Error::Structure(format!("{what} must be defined exactly on the carrier")));
            }
            h.values().iter().map(|v| target.require(v, what).map(|i| i as u32)).collect()
        };
        let hl = index_map(h_left, left.carrier(), "left map")?;
        let hr = index_map(h_right, right.carrier(), "right map")?;
        let (nl, na, nr) = (left.len(), carrier.len(), right.len());
        let mut table = vec![u32::MAX; nl * na * nr];
        for ((l, a, r), out) in g {
            let i = (left.carrier().require(l, "left monoid")? * na + carrier.require(a, "carrier")?) * nr
                + right.carrier().require(r, "right monoid")?;
            if table[i] != u32::MAX {
                return Err(Error::Structure(format!("g({l}, {a}, {r}) is given twice")));
            }
            table[i] = carrier.require(out, "carrier")? as u32;
        }
        if let Some(p) = table.iter().position(|&v| v == u32::MAX) {
            let r = p % nr;
            let a = (p / nr) % na;
            let l = p / (nr * na);
            return Err(Error::Structure(format!(
                "g({}, {}, {}) is missing",
                left.carrier().get(l),
                carrier.get(a),
                right.carrier().get(r)
            )));
        }
        Ok(PointedPresentation { carrier, left, right, h_left: hl, h_right: hr, g: table })
    }

    pub fn carrier(&self) -> &ElemSet {
        &self.carrier
    }

    pub fn left(&self) -> &MonoidTable {
        &self.left
    }

    pub fn right(&self) -> &MonoidTable {
        &self.right
    }

    pub fn h_left(&self) -> FnTable {
        FnTable::tabulate(&self.carrier, |x| {
            self.left.carrier().get(self.h_left[self.carrier.index_of(x).expect("carrier")] as usize).clone()
        })
    }

    pub fn h_right(&self) -> FnTable {
        FnTable::tabulate(&self.carrier, |x| {
            self.right.carrier().get(self.h_right[self.carrier.index_of(x).expect("carrier")] as usize).clone()
        })
    }

    pub fn g_idx(&self, l: usize, a: usize, r: usize) -> usize {
        self.g[(l * self.carrier.len() + a) * self.right.len() + r] as usize
    }

    /// `((l, a, r), g(l, a, r))` for every triple, in index order.
    pub fn g_entries(&self) -> Vec<((Elem, Elem, Elem), Elem)> {
        let mut out = Vec::new();
        for l in 0..self.left.len() {
            for a in 0..self.carrier.len() {
                for r in 0..self.right.len() {
                    out.push((
                        (
                            self.left.carrier().get(l).clone(),
                            self.carrier.get(a).clone(),
                            self.right.carrier().get(r).clone(),
                        ),
                        self.carrier.get(self.g_idx(l, a, r)).clone(),
                    ));
                }
            }
        }
        out
    }

    /// Product of a pointed list given by carrier indices.
    pub fn evaluate_indices(&self, items: &[usize], focus: usize) -> usize {
        let l = self.left.product(items[..focus].iter().map(|&i| self.h_left[i] as usize));
        let r = self.right.product(items[focus + 1..].iter().map(|&i| self.h_right[i] as usize));
        self.g_idx(l, items[focus], r)
    }
}

/// The left and right transformation monoids of a pointed-list algebra,
/// generated by a chosen set of carrier elements.
///
/// `L_a(x) = ∏([a, x̲])` composes as `L_a · L_b = L_a ∘ L_b`;
/// `R_b(x) = ∏([x̲, b])` composes as `R_a · R_b = R_b ∘ R_a`, so that both
/// products follow the order of the list.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub carrier: ElemSet,
    pub generators: ElemSet,
    pub left: MonoidTable,
    pub right: MonoidTable,
    /// Left monoid index of `L_g` for each generator, in generator order.
    pub h_left: Vec<usize>,
    pub h_right: Vec<usize>,
}

impl Decomposition {
    /// `g(l, x, r) = l(r(x))`.
    pub fn g(&self, l: usize, x: &Elem, r: usize) -> Result<Elem> {
        let lt = self.left.carrier().get(l).as_table().expect("transformation");
        let rt = self.right.carrier().get(r).as_table().expect("transformation");
        lt.apply(&rt.apply(x)?)
    }

    pub fn left_of(&self, x: &Elem) -> Option<usize> {
        self.generators.index_of(x).map(|i| self.h_left[i])
    }

    pub fn right_of(&self, x: &Elem) -> Option<usize> {
        self.generators.index_of(x).map(|i| self.h_right[i])
    }

    /// The full presentation; requires the generators to be the whole
    /// carrier.
    pub fn into_presentation(self) -> Result<PointedPresentation> {
        if self.generators != self.carrier {
            return Err(Error::Structure("a presentation needs every carrier element as a generator".into()));
        }
        let mut g = Vec::new();
        for l in 0..self.left.len() {
            for a in self.carrier.iter() {
                for r in 0..self.right.len() {
                    g.push((
                        (self.left.carrier().get(l).clone(), a.clone(), self.right.carrier().get(r).clone()),
                        self.g(l, a, r)?,
                    ));
                }
            }
        }
        let h_left = FnTable::from_values(
            self.carrier.clone(),
            self.h_left.iter().map(|&i| self.left.carrier().get(i).clone()).collect(),
        )?;
        let h_right = FnTable::from_values(
            self.carrier.clone(),
            self.h_right.iter().map(|&i| self.right.carrier().get(i).clone()).collect(),
        )?;
        PointedPresentation::new(self.carrier.clone(), self.left, self.right, &h_left, &h_right, &g)
    }
}

/// Default cap on the size of each transformation monoid.
pub const DEFAULT_MONOID_CAP: usize = 100_000;

/// Decomposes a pointed-list algebra given by a product oracle, using the
/// whole carrier as generators.
pub fn decompose_pointed_algebra(
    carrier: &ElemSet,
    oracle: &dyn Fn(&MVal) -> Result<Elem>,
    cap: usize,
) -> Result<PointedPresentation> {
    decompose_with_generators(carrier, carrier, oracle, cap)?.into_presentation()
}

/// Like [`decompose_pointed_algebra`] but only closes the transformations of
/// the given generators.
pub fn decompose_with_generators(
    carrier: &ElemSet,
    generators: &ElemSet,
    oracle: &dyn Fn(&MVal) -> Result<Elem>,
    cap: usize,
) -> Result<Decomposition> {
    let left_gens: Vec<FnTable> = generators
        .iter()
        .map(|a| {
            FnTable::try_tabulate(carrier, |x| {
                oracle(&MVal::PointedList { items: vec![a.clone(), x.clone()], focus: 1 })
            })
        })
        .collect::<Result<_>>()?;
    let right_gens: Vec<FnTable> = generators
        .iter()
        .map(|b| {
            FnTable::try_tabulate(carrier, |x| {
                oracle(&MVal::PointedList { items: vec![x.clone(), b.clone()], focus: 0 })
            })
        })
        .collect::<Result<_>>()?;
    let id = Elem::FnTable(FnTable::identity(carrier));
    let compose = |m: &Elem, n: &Elem| -> Result<Elem> {
        Ok(Elem::FnTable(m.as_table().expect("table").compose(n.as_table().expect("table"))?))
    };
    let build = |gens: &[FnTable], left: bool| -> Result<MonoidTable> {
        let mut seeds = vec![id.clone()];
        seeds.extend(gens.iter().cloned().map(Elem::FnTable));
        let what = if left { "left transformation monoid" } else { "right transformation monoid" };
        let set = close_under(seeds, compose, cap, what)?;
        let table = SemigroupTable::from_fn_associative(set, |m, n| if left { compose(m, n) } else { compose(n, m) })?;
        MonoidTable::new(table, &id)
    };
    let left = build(&left_gens, true)?;
    let right = build(&right_gens, false)?;
    let h_left = left_gens
        .iter()
        .map(|t| left.carrier().index_of(&Elem::FnTable(t.clone())).expect("generator in closure"))
        .collect();
    let h_right = right_gens
        .iter()
        .map(|t| right.carrier().index_of(&Elem::FnTable(t.clone())).expect("generator in closure"))
        .collect();
    Ok(Decomposition { carrier: carrier.clone(), generators: generators.clone(), left, right, h_left, h_right })
}
