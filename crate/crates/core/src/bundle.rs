//! The principal bundle sheaf over the quantum sphere: transition
//! functions of arbitrary positive charge, the section predicates of the
//! four opens, trivializations, the cocycle conditions, the strong
//! connection with its colinearity properties and canonical-map round
//! trip, bounded-degree coinvariant solving, and the associated vector
//! bundle of the fundamental corepresentation.

use crate::coeff::{linear_solve, rank, LaurentScalar as L, LinearSolution, RationalFunctionScalar as Rf};
use crate::hopf::{hopf, HopfData};
use crate::ncalg::catalog::catalog;
use crate::ncalg::{AlgError, AlgebraElement, Presentation, Word};
use crate::tensor::Tensor;
use crate::twist::{factorization, Factorization};
use std::collections::BTreeMap;
use std::sync::OnceLock;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum BundleError {
    #[error(transparent)]
    Alg(#[from] AlgError),
    #[error("pair fails the section predicate; residual {0}")]
    IncompatiblePair(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Chart {
    N,
    S,
}

pub struct Bundle {
    pub n: &'static Presentation,
    pub s: &'static Presentation,
    pub sn: &'static Presentation,
    pub h: &'static HopfData,
    pub fact: Factorization,
}

pub fn bundle() -> &'static Bundle {
    static B: OnceLock<Bundle> = OnceLock::new();
    B.get_or_init(|| {
        let c = catalog();
        Bundle {
            n: c.presentation("chart-n").unwrap(),
            s: c.presentation("chart-s").unwrap(),
            sn: c.presentation("chart-sn-ext").unwrap(),
            h: hopf(),
            fact: factorization(),
        }
    })
}

/// An element of the ambient of a bundle section space: one
/// `chart (x) structure-algebra` tensor per slot. One slot over the
/// intersection, two slots elsewhere.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AmbPair {
    pub comps: Vec<Tensor>,
}

impl AmbPair {
    pub fn zero_like(&self) -> Self {
        AmbPair {
            comps: self.comps.iter().map(|t| Tensor::zero(t.legs.clone())).collect(),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        AmbPair {
            comps: self.comps.iter().zip(&o.comps).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        AmbPair {
            comps: self.comps.iter().zip(&o.comps).map(|(a, b)| a.sub(b)).collect(),
        }
    }

    pub fn scale(&self, c: &L) -> Self {
        AmbPair { comps: self.comps.iter().map(|t| t.scale(c)).collect() }
    }

    pub fn mul(&self, o: &Self) -> Result<Self, AlgError> {
        let comps = self
            .comps
            .iter()
            .zip(&o.comps)
            .map(|(a, b)| a.mul(b))
            .collect::<Result<_, _>>()?;
        Ok(AmbPair { comps })
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(|t| t.is_zero())
    }

    pub fn display(&self) -> String {
        self.comps
            .iter()
            .map(|t| format!("[{}]", t.display()))
            .collect::<Vec<_>>()
            .join(" , ")
    }
}

impl Bundle {
    fn a(&self) -> &'static Presentation {
        self.h.a
    }

    pub fn unit_pair(&self, charts: &[&'static Presentation]) -> AmbPair {
        AmbPair {
            comps: charts.iter().map(|c| Tensor::unit(vec![c, self.a()])).collect(),
        }
    }

    /// Charge-k transition functions into the intersection chart. The
    /// diagonal ones collapse to the counit; the off-diagonal ones multiply
    /// the Sweedler legs (with antipodes in reverse order for SN) and
    /// transport through the inverse factorization.
    pub fn tau(&self, i: Chart, j: Chart, k: usize, w: &Word) -> Result<AlgebraElement, AlgError> {
        assert!(k >= 1);
        if i == j {
            return Ok(AlgebraElement::scalar(self.h.eps_word(w)));
        }
        let prod = if k == 1 {
            match (i, j) {
                (Chart::N, Chart::S) => AlgebraElement::from_term(w.clone(), L::one()),
                (Chart::S, Chart::N) => self.h.antipode_word(w)?,
                _ => unreachable!(),
            }
        } else {
            let t = self.h.sweedler_word(w, k)?;
            match (i, j) {
                (Chart::N, Chart::S) => {
                    let mut m = t;
                    while m.legs.len() > 1 {
                        m = m.merge_legs(0, 1)?;
                    }
                    one_leg_to_elem(&m)
                }
                (Chart::S, Chart::N) => {
                    let mut m = Tensor::zero(t.legs.clone());
                    for (ws, c) in &t.terms {
                        m.add_term(ws.clone(), c.clone());
                    }
                    // antipode each leg, multiply in reverse Sweedler order
                    for leg in 0..m.legs.len() {
                        m = m.map_leg(leg, self.a(), |v| self.h.antipode_word(v))?;
                    }
                    let rev: Vec<usize> = (0..m.legs.len()).rev().collect();
                    m = m.permute_legs(&rev);
                    while m.legs.len() > 1 {
                        m = m.merge_legs(0, 1)?;
                    }
                    one_leg_to_elem(&m)
                }
                _ => unreachable!(),
            }
        };
        self.fact.transport_su2(&prod)
    }

    /// Convolution-style operator on `intersection (x) A` induced by a
    /// transition function: u (x) h -> u tau(h_(1)) (x) h_(2).
    pub fn twist_by_tau(
        &self,
        i: Chart,
        j: Chart,
        k: usize,
        t: &Tensor,
    ) -> Result<Tensor, AlgError> {
        let expanded = t.expand_leg(1, |w| self.h.sweedler_word(w, 2))?; // [sn, A, A]
        let mapped = expanded.map_leg(1, self.sn, |w| self.tau(i, j, k, w))?; // [sn, sn, A]
        mapped.merge_legs(0, 1)
    }

    fn rho_chart(&self, chart: Chart, t: &Tensor) -> Result<Tensor, AlgError> {
        let name = match chart {
            Chart::N => "rhoN",
            Chart::S => "rhoS",
        };
        t.map_leg(0, self.sn, |w| {
            catalog().apply_morphism(name, &AlgebraElement::from_term(w.clone(), L::one()))
        })
    }

    /// Section predicate residuals; a pair belongs to the section space of
    /// its open set exactly when the residual vanishes.
    pub fn predicate_un(&self, p: &AmbPair, k: usize) -> Result<Tensor, AlgError> {
        let lhs = self.rho_chart(Chart::N, &p.comps[0])?;
        let rhs = self.twist_by_tau(Chart::N, Chart::S, k, &p.comps[1])?;
        Ok(lhs.sub(&rhs))
    }

    pub fn predicate_us(&self, p: &AmbPair, k: usize) -> Result<Tensor, AlgError> {
        let lhs = self.rho_chart(Chart::S, &p.comps[0])?;
        let rhs = self.twist_by_tau(Chart::S, Chart::N, k, &p.comps[1])?;
        Ok(lhs.sub(&rhs))
    }

    pub fn predicate_s4(&self, p: &AmbPair, k: usize) -> Result<Tensor, AlgError> {
        let lhs = self.rho_chart(Chart::N, &p.comps[0])?;
        let rhs = self.twist_by_tau(Chart::N, Chart::S, k, &self.rho_chart(Chart::S, &p.comps[1])?)?;
        Ok(lhs.sub(&rhs))
    }

    /// Trivialization over the north chart: complete `b` to the matching
    /// pair using the convolution-inverse transition function, so that the
    /// section predicate holds by the antipode law.
    pub fn trivialize_n(&self, b: &Tensor, k: usize) -> Result<AmbPair, AlgError> {
        let restricted = self.rho_chart(Chart::N, b)?;
        let second = self.twist_by_tau(Chart::S, Chart::N, k, &restricted)?;
        Ok(AmbPair { comps: vec![b.clone(), second] })
    }

    pub fn trivialize_s(&self, b: &Tensor, k: usize) -> Result<AmbPair, AlgError> {
        let restricted = self.rho_chart(Chart::S, b)?;
        let second = self.twist_by_tau(Chart::N, Chart::S, k, &restricted)?;
        Ok(AmbPair { comps: vec![b.clone(), second] })
    }

    /// Inverse trivialization: first-component projection, valid only on
    /// pairs satisfying the predicate.
    pub fn trivialize_n_inv(&self, p: &AmbPair, k: usize) -> Result<Tensor, BundleError> {
        let res = self.predicate_un(p, k)?;
        if !res.is_zero() {
            return Err(BundleError::IncompatiblePair(res.display()));
        }
        Ok(p.comps[0].clone())
    }

    /// The right coaction (regular corepresentation on the structure leg).
    pub fn coact(&self, p: &AmbPair) -> Result<AmbPair, AlgError> {
        let comps = p
            .comps
            .iter()
            .map(|t| t.expand_leg(1, |w| self.h.sweedler_word(w, 2)))
            .collect::<Result<_, _>>()?;
        Ok(AmbPair { comps })
    }
}

fn one_leg_to_elem(t: &Tensor) -> AlgebraElement {
    let mut e = AlgebraElement::zero();
    for (ws, c) in &t.terms {
        e.add_term(ws[0].clone(), c.clone());
    }
    e
}

/// Element of `Amb (x) Amb` (plus optional extra structure legs): one
/// tensor per block of the two direct sums.
#[derive(Debug, Clone)]
pub struct BlockPair {
    pub charts: Vec<&'static Presentation>,
    pub blocks: BTreeMap<(usize, usize), Tensor>,
}

impl BlockPair {
    pub fn zero(charts: Vec<&'static Presentation>) -> Self {
        BlockPair { charts, blocks: BTreeMap::new() }
    }

    fn add_block(&mut self, key: (usize, usize), t: Tensor) {
        if t.is_zero() {
            return;
        }
        match self.blocks.get_mut(&key) {
            Some(b) => {
                let s = b.add(&t);
                if s.is_zero() {
                    self.blocks.remove(&key);
                } else {
                    *b = s;
                }
            }
            None => {
                self.blocks.insert(key, t);
            }
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (k, t) in &o.blocks {
            out.add_block(*k, t.clone());
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (k, t) in &o.blocks {
            out.add_block(*k, t.neg());
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.is_empty()
    }
}

impl PartialEq for BlockPair {
    fn eq(&self, other: &Self) -> bool {
        self.sub(other).is_zero()
    }
}

impl Bundle {
    /// The strong connection on a structure-algebra word:
    /// sum over slots i of (.., 1 (x) S(h_(1)) at slot i) (x)
    /// (.., 1 (x) h_(2) at slot i), an element of Amb (x) Amb with only
    /// diagonal blocks.
    pub fn ell(&self, w: &Word, charts: &[&'static Presentation]) -> Result<BlockPair, AlgError> {
        let mut out = BlockPair::zero(charts.to_vec());
        let d = self.h.sweedler_word(w, 2)?;
        for (ws, c) in &d.terms {
            let s1 = self.h.antipode_word(&ws[0])?;
            for (sw, sc) in &s1.terms {
                for (i, ch) in charts.iter().enumerate() {
                    let mut t = Tensor::zero(vec![ch, self.a(), ch, self.a()]);
                    t.add_term(
                        vec![Word::unit(), sw.clone(), Word::unit(), ws[1].clone()],
                        c * sc,
                    );
                    out.add_block((i, i), t);
                }
            }
        }
        Ok(out)
    }

    /// Lifted canonical map on Amb (x) Amb (+ trailing legs): multiply the
    /// second slot's coaction into the first; cross blocks vanish in the
    /// direct-sum product.
    pub fn chi_tilde(&self, bp: &BlockPair) -> Result<AmbPair, AlgError> {
        let mut comps: Vec<Tensor> = bp
            .charts
            .iter()
            .map(|ch| {
                // legs [chart, A, A-out, extras...] — built below; start zero
                // with the right profile lazily
                Tensor::zero(vec![*ch, self.a(), self.a()])
            })
            .collect();
        let mut extras_known = false;
        for ((i, j), t) in &bp.blocks {
            if i != j {
                continue; // killed by the direct-sum multiplication
            }
            // [chi, A, chi, A, extras] -> coact on leg 3 -> merge charts and
            // structure legs
            let coacted = t.expand_leg(3, |w| self.h.sweedler_word(w, 2))?;
            let merged = coacted.merge_legs(0, 2)?; // charts
            let merged = merged.merge_legs(1, 2)?; // structure legs
            if !extras_known && merged.legs.len() > comps[*i].legs.len() {
                for c in comps.iter_mut() {
                    let mut legs = c.legs.clone();
                    legs.extend(merged.legs[3..].iter().copied());
                    *c = Tensor::zero(legs);
                }
                extras_known = true;
            }
            comps[*i] = comps[*i].add(&merged);
        }
        Ok(AmbPair { comps })
    }

    /// Multiply an ambient pair into the first slot of a block pair.
    pub fn mul_into_first(&self, p: &AmbPair, bp: &BlockPair) -> Result<BlockPair, AlgError> {
        let mut out = BlockPair::zero(bp.charts.clone());
        for ((i, j), t) in &bp.blocks {
            let mut raw = Tensor::zero(t.legs.clone());
            for (pws, pc) in &p.comps[*i].terms {
                for (tws, tc) in &t.terms {
                    let mut nws = tws.clone();
                    let mut w0 = pws[0].0.clone();
                    w0.extend_from_slice(&nws[0].0);
                    nws[0] = Word(w0);
                    let mut w1 = pws[1].0.clone();
                    w1.extend_from_slice(&nws[1].0);
                    nws[1] = Word(w1);
                    raw.add_term(nws, pc * tc);
                }
            }
            out.add_block((*i, *j), raw.canonicalize()?);
        }
        Ok(out)
    }

    /// Property (i): coacting on the right leg of the connection equals
    /// applying the connection to the first Sweedler leg.
    pub fn ell_property_i(
        &self,
        w: &Word,
        charts: &[&'static Presentation],
    ) -> Result<BlockPair, AlgError> {
        let f = |v: &Word| self.ell(v, charts);
        self.ell_property_i_of(w, charts, &f)
    }

    pub fn ell_property_i_of(
        &self,
        w: &Word,
        charts: &[&'static Presentation],
        ell_fn: &dyn Fn(&Word) -> Result<BlockPair, AlgError>,
    ) -> Result<BlockPair, AlgError> {
        // (ell (x) id) Delta
        let d = self.h.sweedler_word(w, 2)?;
        let mut lhs = BlockPair::zero(charts.to_vec());
        for (ws, c) in &d.terms {
            let e = ell_fn(&ws[0])?;
            for ((i, j), t) in &e.blocks {
                lhs.add_block((*i, *j), t.append_word_leg(self.a(), &ws[1]).scale(c));
            }
        }
        // (id (x) coaction) ell
        let e = ell_fn(w)?;
        let mut rhs = BlockPair::zero(charts.to_vec());
        for ((i, j), t) in &e.blocks {
            rhs.add_block((*i, *j), t.expand_leg(3, |v| self.h.sweedler_word(v, 2))?);
        }
        Ok(lhs.sub(&rhs))
    }

    /// Property (ii): the left coaction (through the inverse antipode,
    /// which is the antipode here) intertwines the connection.
    pub fn ell_property_ii(
        &self,
        w: &Word,
        charts: &[&'static Presentation],
    ) -> Result<BlockPair, AlgError> {
        let f = |v: &Word| self.ell(v, charts);
        self.ell_property_ii_of(w, charts, &f)
    }

    pub fn ell_property_ii_of(
        &self,
        w: &Word,
        charts: &[&'static Presentation],
        ell_fn: &dyn Fn(&Word) -> Result<BlockPair, AlgError>,
    ) -> Result<BlockPair, AlgError> {
        // (id (x) ell) Delta: legs [A, chi, A, chj, A]
        let d = self.h.sweedler_word(w, 2)?;
        let mut lhs = BlockPair::zero(charts.to_vec());
        for (ws, c) in &d.terms {
            let e = ell_fn(&ws[1])?;
            for ((i, j), t) in &e.blocks {
                // prepend the first Sweedler leg
                let appended = t.append_word_leg(self.a(), &ws[0]).scale(c);
                let n = appended.legs.len();
                let mut perm = vec![n - 1];
                perm.extend(0..n - 1);
                lhs.add_block((*i, *j), appended.permute_legs(&perm));
            }
        }
        // (left-coaction (x) id) ell: expand the first slot's structure leg,
        // antipode the second Sweedler leg and move it to the front.
        let e = ell_fn(w)?;
        let mut rhs = BlockPair::zero(charts.to_vec());
        for ((i, j), t) in &e.blocks {
            let expanded = t.expand_leg(1, |v| self.h.sweedler_word(v, 2))?; // [chi, A1, A2, chj, A]
            let mapped = expanded.map_leg(2, self.a(), |v| self.h.antipode_word(v))?;
            let permuted = mapped.permute_legs(&[2, 0, 1, 3, 4]);
            rhs.add_block((*i, *j), permuted);
        }
        Ok(lhs.sub(&rhs))
    }

    /// Property (iii) residual: the lifted canonical map collapses the
    /// connection to `unit (x) id`.
    pub fn ell_property_iii(
        &self,
        w: &Word,
        charts: &[&'static Presentation],
    ) -> Result<AmbPair, AlgError> {
        let f = |v: &Word| self.ell(v, charts);
        self.ell_property_iii_of(w, charts, &f)
    }

    pub fn ell_property_iii_of(
        &self,
        w: &Word,
        charts: &[&'static Presentation],
        ell_fn: &dyn Fn(&Word) -> Result<BlockPair, AlgError>,
    ) -> Result<AmbPair, AlgError> {
        let chi = self.chi_tilde(&ell_fn(w)?)?;
        let mut expect = self.unit_pair(charts);
        expect = AmbPair {
            comps: expect
                .comps
                .iter()
                .map(|t| t.append_word_leg(self.a(), w))
                .collect(),
        };
        Ok(chi.sub(&expect))
    }

    /// Canonical-map round trip: chi(chi^-1(p (x) h)) = p (x) h with
    /// chi^-1(p (x) h) = p ell(h)^(1) (x) ell(h)^(2).
    pub fn chi_round_trip(
        &self,
        p: &AmbPair,
        w: &Word,
        charts: &[&'static Presentation],
    ) -> Result<AmbPair, AlgError> {
        let inv = self.mul_into_first(p, &self.ell(w, charts)?)?;
        let back = self.chi_tilde(&inv)?;
        let expect = AmbPair {
            comps: p
                .comps
                .iter()
                .map(|t| t.append_word_leg(self.a(), w))
                .collect(),
        };
        Ok(back.sub(&expect))
    }

    /// Push the global connection through a restriction morphism of the
    /// section sheaf (slot relabeling plus chart morphisms); the image is a
    /// strong connection on the smaller open set.
    pub fn restrict_ell(
        &self,
        bp: &BlockPair,
        mapping: &[(usize, usize, Option<&'static str>)],
        charts: Vec<&'static Presentation>,
    ) -> Result<BlockPair, AlgError> {
        let mut out = BlockPair::zero(charts.clone());
        for ((i, j), t) in &bp.blocks {
            let Some(&(_, ti, mi)) = mapping.iter().find(|(s, _, _)| s == i) else {
                continue;
            };
            let Some(&(_, tj, mj)) = mapping.iter().find(|(s, _, _)| s == j) else {
                continue;
            };
            let mut img = t.clone();
            if let Some(m) = mi {
                img = img.map_leg(0, charts[ti], |w| {
                    catalog().apply_morphism(m, &AlgebraElement::from_term(w.clone(), L::one()))
                })?;
            }
            if let Some(m) = mj {
                img = img.map_leg(2, charts[tj], |w| {
                    catalog().apply_morphism(m, &AlgebraElement::from_term(w.clone(), L::one()))
                })?;
            }
            out.add_block((ti, tj), img);
        }
        Ok(out)
    }
}

/// Unknown basis vector of the bounded-degree coinvariant computation.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct CoinvBasis {
    pub slot: usize,
    pub chart_word: Word,
    pub struct_word: Word,
}

pub struct CoinvariantReport {
    pub basis: Vec<CoinvBasis>,
    pub kernel: Vec<Vec<Rf>>,
    /// coordinates of the canonical global sections in the same basis
    pub sigma_span: Vec<Vec<Rf>>,
}

impl Bundle {
    /// Solve for coinvariant matching pairs of total degree at most
    /// `max_deg` over the whole sphere: coefficients over the candidate
    /// basis satisfying both the section predicate and the coinvariance
    /// equation.
    pub fn coinvariants_s4(&self, max_deg: usize) -> Result<CoinvariantReport, AlgError> {
        let charts = [self.n, self.s];
        let mut basis = Vec::new();
        for (slot, ch) in charts.iter().enumerate() {
            for wc in ch.words_up_to(max_deg) {
                for wa in self.a().words_up_to(max_deg - wc.len().min(max_deg)) {
                    if wc.len() + wa.len() <= max_deg {
                        basis.push(CoinvBasis { slot, chart_word: wc.clone(), struct_word: wa });
                    }
                }
            }
        }

        // Row space: predicate coordinates and coinvariance coordinates.
        let mut row_index: BTreeMap<(usize, usize, Vec<Word>), usize> = BTreeMap::new();
        let mut columns: Vec<BTreeMap<usize, L>> = Vec::new();
        for cb in &basis {
            let mut pair = AmbPair {
                comps: vec![
                    Tensor::zero(vec![self.n, self.a()]),
                    Tensor::zero(vec![self.s, self.a()]),
                ],
            };
            pair.comps[cb.slot].add_term(
                vec![cb.chart_word.clone(), cb.struct_word.clone()],
                L::one(),
            );
            let mut col: BTreeMap<usize, L> = BTreeMap::new();
            // predicate rows (kind 0)
            let pred = self.predicate_s4(&pair, 1)?;
            for (ws, c) in &pred.terms {
                let key = (0usize, 0usize, ws.clone());
                let next = row_index.len();
                let idx = *row_index.entry(key).or_insert(next);
                col.insert(idx, c.clone());
            }
            // coinvariance rows (kind 1, per slot)
            let coacted = self.coact(&pair)?;
            for (slot, t) in coacted.comps.iter().enumerate() {
                let straight = pair.comps[slot].append_unit_leg(self.a());
                let diff = t.sub(&straight);
                for (ws, c) in &diff.terms {
                    let key = (1usize, slot, ws.clone());
                    let next = row_index.len();
                    let idx = *row_index.entry(key).or_insert(next);
                    col.insert(idx, c.clone());
                }
            }
            columns.push(col);
        }

        let rows = row_index.len();
        let mut matrix = vec![vec![Rf::zero(); basis.len()]; rows];
        for (j, col) in columns.iter().enumerate() {
            for (i, c) in col {
                matrix[*i][j] = Rf::from_laurent(c.clone());
            }
        }
        let rhs = vec![Rf::zero(); rows];
        let kernel = match linear_solve(&matrix, &rhs).map_err(|e| {
            AlgError::InconsistentRules(format!("coinvariant solve: {}", e))
        })? {
            LinearSolution::Unique(_) => Vec::new(),
            LinearSolution::Parametric { kernel, .. } => kernel,
            LinearSolution::Inconsistent => unreachable!("homogeneous system"),
        };

        // Canonical global sections: y in the south chart of bounded
        // degree, glued with its image under the chart isomorphism.
        let mut sigma_span = Vec::new();
        for y in self.s.words_up_to(max_deg) {
            let img = catalog()
                .apply_morphism("Q", &AlgebraElement::from_term(y.clone(), L::one()))?;
            let mut coords = vec![Rf::zero(); basis.len()];
            let mut place = |slot: usize, wc: &Word, c: &L| {
                let cb = CoinvBasis {
                    slot,
                    chart_word: wc.clone(),
                    struct_word: Word::unit(),
                };
                if let Ok(pos) = basis.binary_search(&cb) {
                    coords[pos] = Rf::from_laurent(c.clone());
                } else {
                    panic!("basis misses {:?}", cb);
                }
            };
            for (wc, c) in &img.terms {
                place(0, wc, c);
            }
            place(1, &y, &L::one());
            sigma_span.push(coords);
        }

        Ok(CoinvariantReport { basis, kernel, sigma_span })
    }
}

/// Rank-based span comparison of two coordinate families.
pub fn spans_equal(a: &[Vec<Rf>], b: &[Vec<Rf>]) -> bool {
    if a.is_empty() && b.is_empty() {
        return true;
    }
    let ra = rank(a);
    let rb = rank(b);
    if ra != rb {
        return false;
    }
    let mut joint: Vec<Vec<Rf>> = a.to_vec();
    joint.extend(b.to_vec());
    rank(&joint) == ra
}

/// The fundamental corepresentation matrix of the structure Hopf algebra.
pub fn corep_matrix(b: &Bundle) -> [[AlgebraElement; 2]; 2] {
    let a = b.a();
    [
        [a.gen_elem("x23").unwrap(), a.gen_elem("x24").unwrap()],
        [
            a.gen_elem("x24*").unwrap().neg(),
            a.gen_elem("x23*").unwrap(),
        ],
    ]
}

/// Element of the associated rank-2 bundle over the north chart: one
/// trivialized pair per fiber basis vector.
#[derive(Debug, Clone, PartialEq)]
pub struct VElem {
    pub comps: [AmbPair; 2],
}

impl Bundle {
    /// Coaction of the associated bundle,
    /// e_i (x) x -> sum_j e_j (x) x_(0) (x) S(A_ij) x_(1).
    pub fn assoc_coaction(&self, v: &VElem) -> Result<VElem, AlgError> {
        let amat = corep_matrix(self);
        let zero = || AmbPair {
            comps: v.comps[0]
                .comps
                .iter()
                .map(|t| {
                    let mut legs = t.legs.clone();
                    legs.push(self.a());
                    Tensor::zero(legs)
                })
                .collect(),
        };
        let mut out = VElem { comps: [zero(), zero()] };
        for i in 0..2 {
            let coacted = self.coact(&v.comps[i])?;
            for j in 0..2 {
                let s_aij = self.h.antipode(&amat[i][j])?;
                let mapped = AmbPair {
                    comps: coacted
                        .comps
                        .iter()
                        .map(|t| {
                            t.map_leg(2, self.a(), |w| {
                                self.a().mul(
                                    &s_aij,
                                    &AlgebraElement::from_term(w.clone(), L::one()),
                                )
                            })
                        })
                        .collect::<Result<_, _>>()?,
                };
                out.comps[j] = out.comps[j].add(&mapped);
            }
        }
        Ok(out)
    }

    /// Trivialized associated-bundle section over the north chart:
    /// a (x) e_i -> sum_j e_j (x) Omega_N(a (x) A_ij).
    pub fn gamma_n(&self, a_elem: &AlgebraElement, i: usize) -> Result<VElem, AlgError> {
        let amat = corep_matrix(self);
        let mut comps = Vec::new();
        for j in 0..2 {
            let t = Tensor::of(&[(self.n, a_elem), (self.a(), &amat[i][j])]);
            comps.push(self.trivialize_n(&t, 1)?);
        }
        Ok(VElem { comps: [comps[0].clone(), comps[1].clone()] })
    }

    /// First-factor projection inverse of `gamma_n` (counit on the
    /// structure leg of the own-chart component).
    pub fn gamma_n_inv(&self, v: &VElem) -> Result<[AlgebraElement; 2], AlgError> {
        let mut out = [AlgebraElement::zero(), AlgebraElement::zero()];
        for j in 0..2 {
            let first = &v.comps[j].comps[0];
            let contracted = first.contract_leg(1, |w| Ok(self.h.eps_word(w)))?;
            out[j] = one_leg_to_elem(&contracted);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b() -> &'static Bundle {
        bundle()
    }

    #[test]
    fn tau_values_matching_display() {
        let bb = b();
        // tau_NS(x23) = b23 rinv through the inverse factorization
        let w = bb.a().word(&["x23"]).unwrap();
        let t = bb.tau(Chart::N, Chart::S, 1, &w).unwrap();
        let expect = bb.sn.elem(&[(L::one(), &["b23", "rinv"])]).unwrap();
        assert_eq!(t, expect);
        // tau_NN(x24) = eps(x24) 1 = 0
        let w24 = bb.a().word(&["x24"]).unwrap();
        assert!(bb.tau(Chart::N, Chart::N, 1, &w24).unwrap().is_zero());
        // tau_SN(x23) = f^-1(S(x23) (x) 1) = f^-1(x23* (x) 1) = q b23* rinv
        let t = bb.tau(Chart::S, Chart::N, 1, &w).unwrap();
        let expect = bb.sn.elem(&[(L::q(), &["b23*", "rinv"])]).unwrap();
        assert_eq!(t, expect);
    }

    #[test]
    fn tau_charge_two_on_x23() {
        let bb = b();
        // legs of Delta(x23) multiplied: x23^2 - x24 x24*, transported
        let w = bb.a().word(&["x23"]).unwrap();
        let t = bb.tau(Chart::N, Chart::S, 2, &w).unwrap();
        let prod = bb
            .a()
            .elem(&[
                (L::one(), &["x23", "x23"]),
                (-&L::one(), &["x24", "x24*"]),
            ])
            .unwrap();
        let expect = bb.fact.transport_su2(&prod).unwrap();
        assert_eq!(t, expect);
    }

    #[test]
    fn trivialization_satisfies_predicate() {
        let bb = b();
        // Omega_N(1 (x) x23)
        let x23 = bb.a().gen_elem("x23").unwrap();
        let t = Tensor::of(&[(bb.n, &AlgebraElement::unit()), (bb.a(), &x23)]);
        let p = bb.trivialize_n(&t, 1).unwrap();
        let res = bb.predicate_un(&p, 1).unwrap();
        assert!(res.is_zero(), "residual {}", res.display());
        // group-like structure leg collapses: Omega_N(b23 (x) 1) = (b23 (x) 1, b23 (x) 1)
        let b23 = bb.n.gen_elem("b23").unwrap();
        let t = Tensor::of(&[(bb.n, &b23), (bb.a(), &AlgebraElement::unit())]);
        let p = bb.trivialize_n(&t, 1).unwrap();
        let expect = Tensor::of(&[
            (bb.sn, &bb.sn.gen_elem("b23").unwrap()),
            (bb.a(), &AlgebraElement::unit()),
        ]);
        assert_eq!(p.comps[1], expect);
        // round trip through the inverse
        let back = bb.trivialize_n_inv(&p, 1).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn trivialization_inverse_rejects_non_sections() {
        let bb = b();
        let x23 = bb.a().gen_elem("x23").unwrap();
        let good = bb
            .trivialize_n(&Tensor::of(&[(bb.n, &AlgebraElement::unit()), (bb.a(), &x23)]), 1)
            .unwrap();
        let bad = AmbPair {
            comps: vec![
                good.comps[0].clone(),
                Tensor::unit(vec![bb.sn, bb.a()]),
            ],
        };
        assert!(matches!(
            bb.trivialize_n_inv(&bad, 1),
            Err(BundleError::IncompatiblePair(_))
        ));
    }

    #[test]
    fn cocycle_triangle_on_x23() {
        let bb = b();
        // tau_NS * tau_SN = eps(.) 1 on x23 (the N,S,N triple)
        let w = bb.a().word(&["x23"]).unwrap();
        let conv = bb
            .h
            .convolution(
                |v| bb.tau(Chart::N, Chart::S, 1, v),
                |v| bb.tau(Chart::S, Chart::N, 1, v),
                &AlgebraElement::from_term(w.clone(), L::one()),
                bb.sn,
            )
            .unwrap();
        let expect = AlgebraElement::scalar(bb.h.eps_word(&w));
        assert_eq!(conv, expect);
    }

    #[test]
    fn strong_connection_unital_and_property_iii() {
        let bb = b();
        let charts: &[&'static Presentation] = &[bb.n, bb.s];
        // ell(1) = (1,0)(x)(1,0) + (0,1)(x)(0,1)
        let e = bb.ell(&Word::unit(), charts).unwrap();
        assert_eq!(e.blocks.len(), 2);
        for i in 0..2 {
            let t = &e.blocks[&(i, i)];
            assert_eq!(t.terms.len(), 1);
        }
        // chi_tilde(ell(x23)) = (1,1) (x) x23
        let w = bb.a().word(&["x23"]).unwrap();
        let res = bb.ell_property_iii(&w, charts).unwrap();
        assert!(res.is_zero(), "residual {}", res.display());
    }

    #[test]
    fn strong_connection_colinearity() {
        let bb = b();
        let charts: &[&'static Presentation] = &[bb.n, bb.s];
        for g in ["x23", "x24", "x24*"] {
            let w = bb.a().word(&[g]).unwrap();
            assert!(bb.ell_property_i(&w, charts).unwrap().is_zero(), "(i) on {}", g);
            assert!(bb.ell_property_ii(&w, charts).unwrap().is_zero(), "(ii) on {}", g);
        }
    }

    #[test]
    fn chi_round_trip_on_units() {
        let bb = b();
        let charts: &[&'static Presentation] = &[bb.n, bb.s];
        let p = bb.unit_pair(charts);
        let w = bb.a().word(&["x24"]).unwrap();
        let res = bb.chi_round_trip(&p, &w, charts).unwrap();
        assert!(res.is_zero(), "residual {}", res.display());
    }

    #[test]
    fn restricted_ell_passes_on_intersection() {
        let bb = b();
        let s4_charts: &[&'static Presentation] = &[bb.n, bb.s];
        let w = bb.a().word(&["x23"]).unwrap();
        let e = bb.ell(&w, s4_charts).unwrap();
        let restricted = bb
            .restrict_ell(&e, &[(0, 0, Some("rhoN"))], vec![bb.sn])
            .unwrap();
        // (iii) for the single-slot intersection ambient
        let chi = bb.chi_tilde(&restricted).unwrap();
        let mut expect = bb.unit_pair(&[bb.sn]);
        expect = AmbPair {
            comps: expect
                .comps
                .iter()
                .map(|t| t.append_word_leg(bb.a(), &w))
                .collect(),
        };
        let res = chi.sub(&expect);
        assert!(res.is_zero(), "residual {}", res.display());
    }

    #[test]
    fn coinvariants_degree_zero() {
        let bb = b();
        let rep = bb.coinvariants_s4(0).unwrap();
        assert_eq!(rep.kernel.len(), 1);
        assert!(spans_equal(&rep.kernel, &rep.sigma_span));
    }

    #[test]
    fn coinvariants_degree_one_match_global_sections() {
        let bb = b();
        let rep = bb.coinvariants_s4(1).unwrap();
        assert_eq!(rep.kernel.len(), 5); // unit and the four letters
        assert!(spans_equal(&rep.kernel, &rep.sigma_span));
    }

    #[test]
    fn non_coinvariant_probe_excluded() {
        let bb = b();
        // 1 (x) x23 fails the coinvariance equation already in the ambient.
        let x23 = bb.a().gen_elem("x23").unwrap();
        let t = Tensor::of(&[(bb.n, &AlgebraElement::unit()), (bb.a(), &x23)]);
        let p = AmbPair { comps: vec![t.clone(), Tensor::zero(vec![bb.s, bb.a()])] };
        let coacted = bb.coact(&p).unwrap();
        let straight = AmbPair {
            comps: p.comps.iter().map(|c| c.append_unit_leg(bb.a())).collect(),
        };
        assert!(!coacted.sub(&straight).is_zero());
    }

    #[test]
    fn assoc_gamma_lands_in_coinvariants_and_round_trips() {
        let bb = b();
        let b23 = bb.n.gen_elem("b23").unwrap();
        let v = bb.gamma_n(&b23, 1).unwrap(); // b23 (x) e2
        // coinvariance
        let coacted = bb.assoc_coaction(&v).unwrap();
        let straight = VElem {
            comps: [
                AmbPair {
                    comps: v.comps[0].comps.iter().map(|t| t.append_unit_leg(bb.a())).collect(),
                },
                AmbPair {
                    comps: v.comps[1].comps.iter().map(|t| t.append_unit_leg(bb.a())).collect(),
                },
            ],
        };
        for j in 0..2 {
            let diff = coacted.comps[j].sub(&straight.comps[j]);
            assert!(diff.is_zero(), "component {} residual {}", j, diff.display());
        }
        // round trip
        let back = bb.gamma_n_inv(&v).unwrap();
        assert!(back[0].is_zero());
        assert_eq!(back[1], b23);
    }

    #[test]
    fn assoc_coaction_is_comodule_on_basis() {
        let bb = b();
        let unit = bb.gamma_n(&AlgebraElement::unit(), 0).unwrap();
        // counit property: (id (x) eps) after coaction returns the element
        let coacted = bb.assoc_coaction(&unit).unwrap();
        for j in 0..2 {
            let contracted = AmbPair {
                comps: coacted.comps[j]
                    .comps
                    .iter()
                    .map(|t| t.contract_leg(2, |w| Ok(bb.h.eps_word(w))))
                    .collect::<Result<_, _>>()
                    .unwrap(),
            };
            let diff = contracted.sub(&unit.comps[j]);
            assert!(diff.is_zero(), "counit property on slot {}", j);
        }
    }
}
