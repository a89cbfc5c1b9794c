//! The commutative SU(2) coordinate Hopf algebra on the rescaled chart
//! generators: coproduct, counit, antipode, iterated Sweedler expansion
//! with per-word memoization, and convolution evaluation.

use crate::coeff::LaurentScalar as L;
use crate::ncalg::catalog::catalog;
use crate::ncalg::{AlgError, AlgebraElement, Presentation, Word};
use crate::tensor::Tensor;
use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

pub struct HopfData {
    pub a: &'static Presentation,
    delta_gen: Vec<Tensor>,
    eps_gen: Vec<L>,
    s_gen: Vec<AlgebraElement>,
    memo: Mutex<HashMap<(Word, usize), Tensor>>,
}

pub fn hopf() -> &'static HopfData {
    static H: OnceLock<HopfData> = OnceLock::new();
    H.get_or_init(|| HopfData::build().expect("hopf data"))
}

impl HopfData {
    /// Matrix coproduct of the defining 2x2 matrix
    /// [[x23, x24], [-x24*, x23*]], counit the identity matrix, antipode
    /// the algebraic inverse matrix.
    fn build() -> Result<Self, AlgError> {
        let a = catalog().presentation("su2")?;
        let x23 = a.gen_elem("x23")?;
        let x24 = a.gen_elem("x24")?;
        let x23s = a.gen_elem("x23*")?;
        let x24s = a.gen_elem("x24*")?;

        let mut delta_gen = vec![Tensor::zero(vec![a, a]); a.gen_count()];
        let mut eps_gen = vec![L::zero(); a.gen_count()];
        let mut s_gen = vec![AlgebraElement::zero(); a.gen_count()];

        let mut set = |g: &str, d: Tensor, e: L, s: AlgebraElement| -> Result<(), AlgError> {
            let i = a.gen_index(g)? as usize;
            delta_gen[i] = d;
            eps_gen[i] = e;
            s_gen[i] = s;
            Ok(())
        };

        set(
            "x23",
            Tensor::of(&[(a, &x23), (a, &x23)]).sub(&Tensor::of(&[(a, &x24), (a, &x24s)])),
            L::one(),
            x23s.clone(),
        )?;
        set(
            "x24",
            Tensor::of(&[(a, &x23), (a, &x24)]).add(&Tensor::of(&[(a, &x24), (a, &x23s)])),
            L::zero(),
            x24.neg(),
        )?;
        set(
            "x24*",
            Tensor::of(&[(a, &x24s), (a, &x23)]).add(&Tensor::of(&[(a, &x23s), (a, &x24s)])),
            L::zero(),
            x24s.neg(),
        )?;
        set(
            "x23*",
            Tensor::of(&[(a, &x23s), (a, &x23s)]).sub(&Tensor::of(&[(a, &x24s), (a, &x24)])),
            L::one(),
            x23.clone(),
        )?;

        Ok(HopfData {
            a,
            delta_gen,
            eps_gen,
            s_gen,
            memo: Mutex::new(HashMap::new()),
        })
    }

    /// `legs`-fold Sweedler expansion of a normal-form word, memoized.
    pub fn sweedler_word(&self, w: &Word, legs: usize) -> Result<Tensor, AlgError> {
        assert!(legs >= 1);
        if legs == 1 {
            let mut t = Tensor::zero(vec![self.a]);
            t.add_term(vec![w.clone()], L::one());
            return Ok(t);
        }
        if let Some(t) = self.memo.lock().unwrap().get(&(w.clone(), legs)) {
            return Ok(t.clone());
        }
        // multiplicative extension over the letters, then iterate on the
        // first leg
        let mut acc = Tensor::unit(vec![self.a, self.a]);
        for &g in &w.0 {
            acc = acc.mul(&self.delta_gen[g as usize])?;
        }
        let t = if legs == 2 {
            acc
        } else {
            acc.expand_leg(0, |v| self.sweedler_word(v, legs - 1))?
        };
        self.memo
            .lock()
            .unwrap()
            .insert((w.clone(), legs), t.clone());
        Ok(t)
    }

    pub fn delta(&self, x: &AlgebraElement) -> Result<Tensor, AlgError> {
        self.coproduct_power(x, 1)
    }

    /// k-fold iterated coproduct: k = 1 is the coproduct itself, giving a
    /// (k+1)-leg tensor.
    pub fn coproduct_power(&self, x: &AlgebraElement, k: usize) -> Result<Tensor, AlgError> {
        assert!(k >= 1);
        let mut out = Tensor::zero(vec![self.a; k + 1]);
        for (w, c) in &x.terms {
            let t = self.sweedler_word(w, k + 1)?;
            for (ws, v) in &t.terms {
                out.add_term(ws.clone(), c * v);
            }
        }
        Ok(out)
    }

    pub fn eps_word(&self, w: &Word) -> L {
        let mut c = L::one();
        for &g in &w.0 {
            c = &c * &self.eps_gen[g as usize];
            if c.is_zero() {
                break;
            }
        }
        c
    }

    pub fn antipode_word(&self, w: &Word) -> Result<AlgebraElement, AlgError> {
        // the algebra is commutative, so S extends multiplicatively
        let mut acc = AlgebraElement::unit();
        for &g in &w.0 {
            acc = self.a.mul(&acc, &self.s_gen[g as usize])?;
        }
        Ok(acc)
    }

    pub fn eps(&self, x: &AlgebraElement) -> L {
        let mut out = L::zero();
        for (w, c) in &x.terms {
            out = &out + &(c * &self.eps_word(w));
        }
        out
    }

    pub fn antipode(&self, x: &AlgebraElement) -> Result<AlgebraElement, AlgError> {
        let mut out = AlgebraElement::zero();
        for (w, c) in &x.terms {
            out = out.add(&self.antipode_word(w)?.scale(c));
        }
        self.a.normal_form(&out)
    }

    /// Convolution `(f * g)(h) = sum f(h_(1)) g(h_(2))` of two linear maps
    /// into a common target presentation.
    pub fn convolution<F, G>(
        &self,
        f: F,
        g: G,
        h: &AlgebraElement,
        target: &Presentation,
    ) -> Result<AlgebraElement, AlgError>
    where
        F: Fn(&Word) -> Result<AlgebraElement, AlgError>,
        G: Fn(&Word) -> Result<AlgebraElement, AlgError>,
    {
        let t = self.delta(h)?;
        let mut out = AlgebraElement::zero();
        for (ws, c) in &t.terms {
            let prod = target.mul(&f(&ws[0])?, &g(&ws[1])?)?;
            out = out.add(&prod.scale(c));
        }
        target.normal_form(&out)
    }

    /// All normal-form words of length at most `len`.
    pub fn words_up_to(&self, len: usize) -> Vec<Word> {
        let n = self.a.gen_count() as u32;
        let mut out = vec![Word::unit()];
        let mut layer = vec![Word::unit()];
        for _ in 0..len {
            let mut next = Vec::new();
            for w in &layer {
                for g in 0..n {
                    let mut v = w.0.clone();
                    v.push(g);
                    let nf = self
                        .a
                        .normal_form(&AlgebraElement::from_term(Word(v), L::one()))
                        .unwrap();
                    for nw in nf.terms.keys() {
                        if nw.len() == w.len() + 1 && !next.contains(nw) {
                            next.push(nw.clone());
                        }
                    }
                }
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        out.sort();
        out.dedup();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    fn h() -> &'static HopfData {
        hopf()
    }

    #[test]
    fn coproduct_of_x24_matches_matrix_form() {
        let hd = h();
        let x24 = hd.a.gen_elem("x24").unwrap();
        let t = hd.delta(&x24).unwrap();
        let x23 = hd.a.gen_elem("x23").unwrap();
        let x23s = hd.a.gen_elem("x23*").unwrap();
        let expect = Tensor::of(&[(hd.a, &x23), (hd.a, &x24)])
            .add(&Tensor::of(&[(hd.a, &x24), (hd.a, &x23s)]));
        assert_eq!(t, expect);
    }

    #[test]
    fn unit_is_grouplike() {
        let hd = h();
        let one = AlgebraElement::unit();
        assert_eq!(hd.delta(&one).unwrap(), Tensor::unit(vec![hd.a, hd.a]));
    }

    #[test]
    fn coassociativity_on_x23() {
        let hd = h();
        let x23 = hd.a.gen_elem("x23").unwrap();
        let d = hd.delta(&x23).unwrap();
        let left = d.expand_leg(0, |w| hd.sweedler_word(w, 2)).unwrap();
        let right = d.expand_leg(1, |w| hd.sweedler_word(w, 2)).unwrap();
        assert_eq!(left, right);
    }

    #[test]
    fn antipode_and_counit_values() {
        let hd = h();
        let x23 = hd.a.gen_elem("x23").unwrap();
        let x24 = hd.a.gen_elem("x24").unwrap();
        assert_eq!(
            hd.antipode(&x23).unwrap(),
            hd.a.gen_elem("x23*").unwrap()
        );
        assert!(hd.eps(&x24).is_zero());
        assert!(hd.eps(&x23).is_one());
        // S^2 = id on x24*.
        let x24s = hd.a.gen_elem("x24*").unwrap();
        assert_eq!(
            hd.antipode(&hd.antipode(&x24s).unwrap()).unwrap(),
            x24s
        );
    }

    #[test]
    fn antipode_law_on_generators() {
        let hd = h();
        for g in ["x23", "x23*", "x24", "x24*"] {
            let x = hd.a.gen_elem(g).unwrap();
            let lhs = hd
                .convolution(
                    |w| hd.antipode_word(w),
                    |w| Ok(AlgebraElement::from_term(w.clone(), L::one())),
                    &x,
                    hd.a,
                )
                .unwrap();
            let expect = AlgebraElement::scalar(hd.eps(&x));
            assert_eq!(lhs, expect, "S * id on {}", g);
        }
    }

    #[test]
    fn counit_law_is_identity() {
        let hd = h();
        let x24 = hd.a.gen_elem("x24").unwrap();
        let conv = hd
            .convolution(
                |w| Ok(AlgebraElement::scalar(hd.eps_word(w))),
                |w| Ok(AlgebraElement::from_term(w.clone(), L::one())),
                &x24,
                hd.a,
            )
            .unwrap();
        assert_eq!(conv, x24);
    }

    #[test]
    fn delta_well_defined_on_sphere_relation() {
        let hd = h();
        let rel = hd
            .a
            .elem(&[
                (L::one(), &["x23*", "x23"]),
                (L::one(), &["x24*", "x24"]),
            ])
            .unwrap();
        // Delta of x23* x23 + x24* x24 reduces to 1 (x) 1.
        assert_eq!(hd.delta(&rel).unwrap(), Tensor::unit(vec![hd.a, hd.a]));
        assert!(hd.eps(&rel).is_one());
        assert_eq!(hd.antipode(&rel).unwrap(), AlgebraElement::unit());
    }

    #[test]
    fn det_style_identity() {
        let hd = h();
        let det = hd
            .a
            .elem(&[
                (L::one(), &["x23", "x23*"]),
                (L::one(), &["x24", "x24*"]),
                (-&L::one(), &[]),
            ])
            .unwrap();
        assert!(det.is_zero());
    }

    #[test]
    fn delta_is_algebra_morphism_on_randoms() {
        let hd = h();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..30 {
            let x = hd.a.normal_form(&hd.a.random_element(&mut rng, 3, 2)).unwrap();
            let y = hd.a.normal_form(&hd.a.random_element(&mut rng, 3, 2)).unwrap();
            let lhs = hd.delta(&hd.a.mul(&x, &y).unwrap()).unwrap();
            let rhs = hd.delta(&x).unwrap().mul(&hd.delta(&y).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
        }
    }
}
