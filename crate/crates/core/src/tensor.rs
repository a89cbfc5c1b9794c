//! Multi-leg tensors over catalog presentations, stored at word level with
//! bilinear canonicalization: every leg word is kept in its presentation's
//! normal form and equal leg tuples are merged.

use crate::coeff::LaurentScalar;
use crate::ncalg::{AlgError, AlgebraElement, Presentation, Word};
use std::collections::BTreeMap;

#[derive(Debug, Clone)]
pub struct Tensor {
    pub legs: Vec<&'static Presentation>,
    pub terms: BTreeMap<Vec<Word>, LaurentScalar>,
}

impl PartialEq for Tensor {
    fn eq(&self, other: &Self) -> bool {
        self.legs.len() == other.legs.len()
            && self
                .legs
                .iter()
                .zip(&other.legs)
                .all(|(a, b)| a.name == b.name)
            && self.terms == other.terms
    }
}
impl Eq for Tensor {}

impl Tensor {
    pub fn zero(legs: Vec<&'static Presentation>) -> Self {
        Tensor { legs, terms: BTreeMap::new() }
    }

    pub fn unit(legs: Vec<&'static Presentation>) -> Self {
        let n = legs.len();
        let mut t = Tensor::zero(legs);
        t.add_term(vec![Word::unit(); n], LaurentScalar::one());
        t
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, ws: Vec<Word>, c: LaurentScalar) {
        assert_eq!(ws.len(), self.legs.len());
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(ws) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = &*o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (ws, c) in &other.terms {
            out.add_term(ws.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (ws, c) in &other.terms {
            out.add_term(ws.clone(), -c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        Tensor {
            legs: self.legs.clone(),
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &LaurentScalar) -> Self {
        if c.is_zero() {
            return Tensor::zero(self.legs.clone());
        }
        Tensor {
            legs: self.legs.clone(),
            terms: self.terms.iter().map(|(w, k)| (w.clone(), k * c)).collect(),
        }
    }

    /// Pure tensor of normal-form elements.
    pub fn of(factors: &[(&'static Presentation, &AlgebraElement)]) -> Self {
        let legs: Vec<_> = factors.iter().map(|(p, _)| *p).collect();
        let mut out = Tensor::zero(legs);
        let mut stack: Vec<(usize, Vec<Word>, LaurentScalar)> =
            vec![(0, Vec::new(), LaurentScalar::one())];
        while let Some((i, ws, c)) = stack.pop() {
            if i == factors.len() {
                out.add_term(ws, c);
                continue;
            }
            for (w, k) in &factors[i].1.terms {
                let mut nws = ws.clone();
                nws.push(w.clone());
                stack.push((i + 1, nws, &c * k));
            }
        }
        out
    }

    /// Re-normalize every leg word and re-expand; used after splicing raw
    /// words into legs.
    pub fn canonicalize(&self) -> Result<Self, AlgError> {
        let mut out = Tensor::zero(self.legs.clone());
        for (ws, c) in &self.terms {
            let mut factors: Vec<AlgebraElement> = Vec::with_capacity(ws.len());
            for (i, w) in ws.iter().enumerate() {
                factors.push(
                    self.legs[i]
                        .normal_form(&AlgebraElement::from_term(w.clone(), LaurentScalar::one()))?,
                );
            }
            distribute(&factors, c, &mut out);
        }
        Ok(out)
    }

    /// Componentwise product (same legs).
    pub fn mul(&self, other: &Self) -> Result<Self, AlgError> {
        assert_eq!(self.legs.len(), other.legs.len());
        let mut raw = Tensor::zero(self.legs.clone());
        for (ws, c) in &self.terms {
            for (vs, k) in &other.terms {
                let nws: Vec<Word> = ws
                    .iter()
                    .zip(vs)
                    .map(|(a, b)| {
                        let mut w = a.0.clone();
                        w.extend_from_slice(&b.0);
                        Word(w)
                    })
                    .collect();
                raw.add_term(nws, c * k);
            }
        }
        raw.canonicalize()
    }

    /// Replace leg `i` through a word-level linear map into the same or a
    /// different presentation.
    pub fn map_leg<F>(&self, i: usize, new_pres: &'static Presentation, f: F) -> Result<Self, AlgError>
    where
        F: Fn(&Word) -> Result<AlgebraElement, AlgError>,
    {
        let mut legs = self.legs.clone();
        legs[i] = new_pres;
        let mut out = Tensor::zero(legs);
        for (ws, c) in &self.terms {
            let img = f(&ws[i])?;
            for (w, k) in &img.terms {
                let mut nws = ws.clone();
                nws[i] = w.clone();
                out.add_term(nws, c * k);
            }
        }
        Ok(out)
    }

    /// Replace leg `i` by a multi-leg expansion (e.g. a coproduct).
    pub fn expand_leg<F>(&self, i: usize, f: F) -> Result<Self, AlgError>
    where
        F: Fn(&Word) -> Result<Tensor, AlgError>,
    {
        let mut out: Option<Tensor> = None;
        for (ws, c) in &self.terms {
            let img = f(&ws[i])?;
            let mut legs = self.legs.clone();
            legs.splice(i..=i, img.legs.iter().copied());
            let o = out.get_or_insert_with(|| Tensor::zero(legs.clone()));
            assert_eq!(o.legs.len(), legs.len());
            for (vs, k) in &img.terms {
                let mut nws = ws.clone();
                nws.splice(i..=i, vs.iter().cloned());
                o.add_term(nws, c * k);
            }
        }
        match out {
            Some(t) => Ok(t),
            None => {
                // zero tensor: build the expanded leg profile from f on the
                // unit word
                let img = f(&Word::unit())?;
                let mut legs = self.legs.clone();
                legs.splice(i..=i, img.legs.iter().copied());
                Ok(Tensor::zero(legs))
            }
        }
    }

    /// Multiply leg `j` into leg `i` (same presentation), dropping leg `j`.
    pub fn merge_legs(&self, i: usize, j: usize) -> Result<Self, AlgError> {
        assert!(i < j);
        assert_eq!(self.legs[i].name, self.legs[j].name);
        let mut legs = self.legs.clone();
        legs.remove(j);
        let mut raw = Tensor::zero(legs);
        for (ws, c) in &self.terms {
            let mut nws = ws.clone();
            let wj = nws.remove(j);
            let mut w = nws[i].0.clone();
            w.extend_from_slice(&wj.0);
            nws[i] = Word(w);
            raw.add_term(nws, c.clone());
        }
        raw.canonicalize()
    }

    /// Contract leg `i` with a scalar-valued functional (e.g. a counit).
    pub fn contract_leg<F>(&self, i: usize, f: F) -> Result<Self, AlgError>
    where
        F: Fn(&Word) -> Result<LaurentScalar, AlgError>,
    {
        let mut legs = self.legs.clone();
        legs.remove(i);
        let mut out = Tensor::zero(legs);
        for (ws, c) in &self.terms {
            let v = f(&ws[i])?;
            let mut nws = ws.clone();
            nws.remove(i);
            out.add_term(nws, c * &v);
        }
        Ok(out)
    }

    /// Reorder legs: new leg `i` is old leg `perm[i]`.
    pub fn permute_legs(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.legs.len());
        let legs: Vec<_> = perm.iter().map(|&i| self.legs[i]).collect();
        let mut out = Tensor::zero(legs);
        for (ws, c) in &self.terms {
            let nws: Vec<Word> = perm.iter().map(|&i| ws[i].clone()).collect();
            out.add_term(nws, c.clone());
        }
        out
    }

    /// Append a word leg at the end.
    pub fn append_word_leg(&self, p: &'static Presentation, w: &Word) -> Self {
        let mut legs = self.legs.clone();
        legs.push(p);
        let mut out = Tensor::zero(legs);
        for (ws, c) in &self.terms {
            let mut nws = ws.clone();
            nws.push(w.clone());
            out.add_term(nws, c.clone());
        }
        out
    }

    /// Append a unit leg at the end.
    pub fn append_unit_leg(&self, p: &'static Presentation) -> Self {
        let mut legs = self.legs.clone();
        legs.push(p);
        let mut out = Tensor::zero(legs);
        for (ws, c) in &self.terms {
            let mut nws = ws.clone();
            nws.push(Word::unit());
            out.add_term(nws, c.clone());
        }
        out
    }

    pub fn display(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (ws, c) in &self.terms {
            let body = ws
                .iter()
                .enumerate()
                .map(|(i, w)| self.legs[i].display_word(w))
                .collect::<Vec<_>>()
                .join(" (x) ");
            let cs = c.to_string();
            if cs == "1" {
                parts.push(body);
            } else if c.as_monomial().is_some() {
                parts.push(format!("{} * {}", cs, body));
            } else {
                parts.push(format!("({}) * {}", cs, body));
            }
        }
        parts.join(" + ")
    }
}

fn distribute(factors: &[AlgebraElement], coeff: &LaurentScalar, out: &mut Tensor) {
    let mut stack: Vec<(usize, Vec<Word>, LaurentScalar)> =
        vec![(0, Vec::new(), coeff.clone())];
    while let Some((i, ws, c)) = stack.pop() {
        if i == factors.len() {
            out.add_term(ws, c);
            continue;
        }
        for (w, k) in &factors[i].terms {
            let mut nws = ws.clone();
            nws.push(w.clone());
            stack.push((i + 1, nws, &c * k));
        }
    }
}
