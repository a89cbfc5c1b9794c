//! The fixed four-open topology on the classical sphere and the structure
//! sheaf of chart algebras with its restriction morphisms.

use crate::ncalg::catalog::catalog;
use crate::ncalg::{AlgError, AlgebraElement, Presentation};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum OpenSet {
    Empty,
    USN,
    UN,
    US,
    S4,
}

#[derive(Debug, Error)]
pub enum SheafError {
    #[error("{0:?} is not a subset of {1:?}")]
    NotASubset(OpenSet, OpenSet),
    #[error(transparent)]
    Alg(#[from] AlgError),
}

impl OpenSet {
    /// Containment in the four-set lattice: Empty < USN < UN, US < S4.
    pub fn leq(self, other: OpenSet) -> bool {
        use OpenSet::*;
        matches!(
            (self, other),
            (Empty, _)
                | (USN, USN)
                | (USN, UN)
                | (USN, US)
                | (USN, S4)
                | (UN, UN)
                | (UN, S4)
                | (US, US)
                | (US, S4)
                | (S4, S4)
        )
    }

    pub fn all() -> [OpenSet; 5] {
        [OpenSet::Empty, OpenSet::USN, OpenSet::UN, OpenSet::US, OpenSet::S4]
    }

    /// The chart presentation of the open sets carrying a single algebra.
    pub fn chart(self) -> Option<&'static Presentation> {
        let c = catalog();
        match self {
            OpenSet::UN => Some(c.presentation("chart-n").unwrap()),
            OpenSet::US => Some(c.presentation("chart-s").unwrap()),
            OpenSet::USN => Some(c.presentation("chart-sn-ext").unwrap()),
            _ => None,
        }
    }
}

/// Restriction of a chart element along the lattice. Sections over the
/// whole sphere are pairs and are handled by [`GlobalSection`].
pub fn restrict(
    u: OpenSet,
    v: OpenSet,
    x: &AlgebraElement,
) -> Result<AlgebraElement, SheafError> {
    if !v.leq(u) {
        return Err(SheafError::NotASubset(v, u));
    }
    if v == OpenSet::Empty {
        return Ok(AlgebraElement::zero());
    }
    if u == v {
        return Ok(x.clone());
    }
    let c = catalog();
    match (u, v) {
        (OpenSet::UN, OpenSet::USN) => Ok(c.apply_morphism("rhoN", x)?),
        (OpenSet::US, OpenSet::USN) => Ok(c.apply_morphism("rhoS", x)?),
        _ => Err(SheafError::NotASubset(v, u)),
    }
}

/// A pair of chart elements agreeing on the intersection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GlobalSection {
    pub n: AlgebraElement,
    pub s: AlgebraElement,
}

/// Matching test for a candidate pair; returns the residual on the
/// intersection.
pub fn is_global_section(
    n: &AlgebraElement,
    s: &AlgebraElement,
) -> Result<(bool, AlgebraElement), SheafError> {
    let c = catalog();
    let sn = c.presentation("chart-sn-ext")?;
    let rn = c.apply_morphism("rhoN", n)?;
    let rs = c.apply_morphism("rhoS", s)?;
    let res = sn.normal_form(&rn.sub(&rs))?;
    Ok((res.is_zero(), res))
}

impl GlobalSection {
    pub fn new(n: AlgebraElement, s: AlgebraElement) -> Result<Self, SheafError> {
        let (ok, res) = is_global_section(&n, &s)?;
        if !ok {
            let sn = catalog().presentation("chart-sn-ext")?;
            return Err(SheafError::Alg(AlgError::InconsistentRules(format!(
                "pair does not glue; residual {}",
                sn.display(&res)
            ))));
        }
        Ok(GlobalSection { n, s })
    }

    /// Chart-pair wire form, `{"U_N": "<expr>", "U_S": "<expr>"}`.
    pub fn to_json(&self) -> serde_json::Value {
        let c = catalog();
        let n = c.presentation("chart-n").unwrap();
        let s = c.presentation("chart-s").unwrap();
        serde_json::json!({
            "U_N": n.display(&self.n),
            "U_S": s.display(&self.s),
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self, SheafError> {
        let c = catalog();
        let n = c.presentation("chart-n")?;
        let s = c.presentation("chart-s")?;
        let read = |p: &Presentation, key: &str| -> Result<AlgebraElement, SheafError> {
            let src = v[key]
                .as_str()
                .ok_or_else(|| SheafError::Alg(AlgError::UnknownGenerator(format!(
                    "missing field {}",
                    key
                ))))?;
            crate::parse::parse(src)
                .and_then(|e| crate::parse::eval(&e, p, None))
                .map_err(|e| SheafError::Alg(AlgError::UnknownGenerator(e.to_string())))
        };
        GlobalSection::new(read(n, "U_N")?, read(s, "U_S")?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::LaurentScalar as L;

    #[test]
    fn lattice_shape() {
        use OpenSet::*;
        assert!(USN.leq(UN) && USN.leq(US) && UN.leq(S4) && US.leq(S4));
        assert!(!UN.leq(US) && !US.leq(UN) && !S4.leq(UN));
    }

    #[test]
    fn restrictions() {
        let c = catalog();
        let n = c.presentation("chart-n").unwrap();
        let sn = c.presentation("chart-sn-ext").unwrap();
        let b23 = n.gen_elem("b23").unwrap();
        // identity restriction
        assert_eq!(restrict(OpenSet::UN, OpenSet::UN, &b23).unwrap(), b23);
        // b23 restricts to the same letter on the intersection
        assert_eq!(
            restrict(OpenSet::UN, OpenSet::USN, &b23).unwrap(),
            sn.gen_elem("b23").unwrap()
        );
        // a23 restricts through the chart isomorphism, coefficients involuted
        let s = c.presentation("chart-s").unwrap();
        let a23 = s.gen_elem("a23").unwrap();
        assert_eq!(
            restrict(OpenSet::US, OpenSet::USN, &a23).unwrap(),
            sn.elem(&[(L::q_pow(2), &["b23"])]).unwrap()
        );
        assert!(restrict(OpenSet::USN, OpenSet::UN, &b23).is_err());
    }

    #[test]
    fn global_sections() {
        let c = catalog();
        let n = c.presentation("chart-n").unwrap();
        let s = c.presentation("chart-s").unwrap();
        // units glue
        assert!(is_global_section(&AlgebraElement::unit(), &AlgebraElement::unit())
            .unwrap()
            .0);
        // (q^2 b23, a23) glues exactly
        let pair = GlobalSection::new(
            n.elem(&[(L::q_pow(2), &["b23"])]).unwrap(),
            s.gen_elem("a23").unwrap(),
        );
        assert!(pair.is_ok());
        // (b23, a23) leaves the residual (1 - q^2) b23
        let (ok, res) = is_global_section(
            &n.gen_elem("b23").unwrap(),
            &s.gen_elem("a23").unwrap(),
        )
        .unwrap();
        assert!(!ok);
        let sn = c.presentation("chart-sn-ext").unwrap();
        let expect = sn
            .elem(&[(&L::one() - &L::q_pow(2), &["b23"])])
            .unwrap();
        assert_eq!(res, expect);
    }

    #[test]
    fn global_section_json_round_trip() {
        let c = catalog();
        let n = c.presentation("chart-n").unwrap();
        let s = c.presentation("chart-s").unwrap();
        let g = GlobalSection::new(
            n.elem(&[(L::q_pow(2), &["b23"])]).unwrap(),
            s.gen_elem("a23").unwrap(),
        )
        .unwrap();
        let v = g.to_json();
        assert!(v["U_N"].is_string() && v["U_S"].is_string());
        let back = GlobalSection::from_json(&v).unwrap();
        assert_eq!(back, g);
        // a non-gluing pair is rejected on the way in
        let bad = serde_json::json!({"U_N": "b23", "U_S": "a23"});
        assert!(GlobalSection::from_json(&bad).is_err());
    }

    #[test]
    fn verify_identity_reports_residuals() {
        let c = catalog();
        let n = c.presentation("chart-n").unwrap();
        let lhs = n.elem(&[(L::one(), &["b23", "b24"])]).unwrap();
        let rhs = n.elem(&[(L::one(), &["b24", "b23"])]).unwrap();
        let (ok, res) = crate::ncalg::verify_identity(n, &lhs, &rhs).unwrap();
        assert!(ok && res.is_zero());
        let (ok, res) = crate::ncalg::verify_identity(n, &lhs, &n.gen_elem("b23").unwrap()).unwrap();
        assert!(!ok && !res.is_zero());
    }

    #[test]
    fn restriction_composition_commutes() {
        // Restricting through the lattice in stages equals the direct map.
        let c = catalog();
        let n = c.presentation("chart-n").unwrap();
        let x = n
            .elem(&[(L::q(), &["b23", "b24*"]), (L::from_int(2), &["b24"])])
            .unwrap();
        let direct = restrict(OpenSet::UN, OpenSet::USN, &x).unwrap();
        let via_self = restrict(
            OpenSet::UN,
            OpenSet::USN,
            &restrict(OpenSet::UN, OpenSet::UN, &x).unwrap(),
        )
        .unwrap();
        assert_eq!(direct, via_self);
    }
}
