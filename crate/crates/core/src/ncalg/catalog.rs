//! The fixed catalog of presentations and algebra maps.
//!
//! Chart conventions: the north and south charts use the star-closed
//! alphabets {b23, b23*, b24, b24*} and {a23, a23*, a24, a24*}; the
//! redundant coordinates are defined elements available as aliases
//! (`b13 = q b24*`, `b14 = -q b23*`, `a13 = q^3 a24*`, `a14 = -q^3 a23*`).
//! The radius-extended intersections carry both `r` and `rinv` as letters
//! with `r rinv -> 1` and the sphere relation oriented to eliminate
//! `b24* b24` (resp. `a24* a24`).

use super::morphism::MorphismTable;
use super::rewrite::{AlgError, AlgebraElement, Presentation, Word};
use crate::coeff::LaurentScalar as L;
use std::collections::BTreeMap;
use std::sync::OnceLock;

/// All plain (degree-zero) catalog presentations and the named morphisms
/// between them.
pub struct Catalog {
    pres: BTreeMap<String, Presentation>,
    morphisms: BTreeMap<String, MorphismTable>,
}

pub const PRESENTATION_NAMES: [&str; 9] = [
    "grassmannian",
    "grassmannian-l34loc",
    "grassmannian-l12loc",
    "chart-n",
    "chart-s",
    "chart-sn-ext",
    "chart-ns-ext",
    "su2",
    "remark-aprime",
];

pub const MORPHISM_NAMES: [&str; 9] = [
    "Q",
    "Q-inv",
    "Qtilde",
    "Qtilde-inv",
    "rhoN",
    "rhoS",
    "inclN",
    "inclS",
    "aprime-embed",
];

impl Catalog {
    pub fn presentation(&self, name: &str) -> Result<&Presentation, AlgError> {
        self.pres
            .get(name)
            .ok_or_else(|| AlgError::UnknownGenerator(format!("presentation `{}`", name)))
    }

    pub fn morphism(&self, name: &str) -> Result<&MorphismTable, AlgError> {
        self.morphisms
            .get(name)
            .ok_or_else(|| AlgError::UnknownGenerator(format!("morphism `{}`", name)))
    }

    pub fn presentations(&self) -> impl Iterator<Item = (&String, &Presentation)> {
        self.pres.iter()
    }

    pub fn morphisms(&self) -> impl Iterator<Item = (&String, &MorphismTable)> {
        self.morphisms.iter()
    }

    /// Apply a named morphism to an element of its source presentation.
    pub fn apply_morphism(
        &self,
        name: &str,
        x: &AlgebraElement,
    ) -> Result<AlgebraElement, AlgError> {
        let m = self.morphism(name)?;
        let src = self.presentation(&m.source)?;
        let tgt = self.presentation(&m.target)?;
        m.apply(src, tgt, x)
    }
}

pub fn catalog() -> &'static Catalog {
    static CAT: OnceLock<Catalog> = OnceLock::new();
    CAT.get_or_init(|| build_catalog().expect("catalog construction"))
}

fn q(e: i64) -> L {
    L::q_pow(e)
}

fn one() -> L {
    L::one()
}

/// North chart: b23 b23* = q^-2 b23* b23 and companions, letter order
/// matching the normal-ordering convention used for the connection
/// computations (b23* < b23 < b24 < b24*).
fn chart_n() -> Result<Presentation, AlgError> {
    let mut p = Presentation::new("chart-n");
    for g in ["b23*", "b23", "b24", "b24*"] {
        p.add_gen(g, 0, false);
    }
    p.set_star_pair("b23", "b23*", one());
    p.set_star_pair("b24", "b24*", one());
    p.add_swap("b23", "b23*", q(-2));
    p.add_swap("b24", "b23*", q(-2));
    p.add_swap("b24", "b23", one());
    p.add_swap("b24*", "b23*", one());
    p.add_swap("b24*", "b23", q(2));
    p.add_swap("b24*", "b24", q(2));
    let b13 = p.elem(&[(q(1), &["b24*"])])?;
    let b14 = p.elem(&[(-&q(1), &["b23*"])])?;
    let beta = p.elem(&[(one(), &["b23*", "b23"]), (one(), &["b24*", "b24"])])?;
    p.aliases.insert("b13".into(), b13);
    p.aliases.insert("b14".into(), b14);
    p.aliases.insert("beta".into(), beta.clone());
    p.aliases.insert("r2".into(), beta);
    Ok(p)
}

/// South chart: mirror of the north chart with q -> q^-1 factors.
fn chart_s() -> Result<Presentation, AlgError> {
    let mut p = Presentation::new("chart-s");
    for g in ["a23*", "a23", "a24", "a24*"] {
        p.add_gen(g, 0, false);
    }
    p.set_star_pair("a23", "a23*", one());
    p.set_star_pair("a24", "a24*", one());
    p.add_swap("a23", "a23*", q(2));
    p.add_swap("a24", "a23*", q(2));
    p.add_swap("a24", "a23", one());
    p.add_swap("a24*", "a23*", one());
    p.add_swap("a24*", "a23", q(-2));
    p.add_swap("a24*", "a24", q(-2));
    let a13 = p.elem(&[(q(3), &["a24*"])])?;
    let a14 = p.elem(&[(-&q(3), &["a23*"])])?;
    let alpha = p.elem(&[(q(4), &["a23*", "a23"]), (q(4), &["a24*", "a24"])])?;
    p.aliases.insert("a13".into(), a13);
    p.aliases.insert("a14".into(), a14);
    p.aliases.insert("alpha".into(), alpha);
    Ok(p)
}

/// Radius-extended intersection seen from the north: letters r^-1, r and
/// the b's, sphere relation b24* b24 -> r r - b23* b23.
fn chart_sn_ext() -> Result<Presentation, AlgError> {
    let mut p = Presentation::new("chart-sn-ext");
    for g in ["rinv", "r", "b23*", "b23", "b24*", "b24"] {
        p.add_gen(g, 0, false);
    }
    p.set_star_real("rinv");
    p.set_star_real("r");
    p.set_star_pair("b23", "b23*", one());
    p.set_star_pair("b24", "b24*", one());
    // b-b swaps under the order b23* < b23 < b24* < b24
    p.add_swap("b23", "b23*", q(-2));
    p.add_swap("b24*", "b23*", one());
    p.add_swap("b24*", "b23", q(2));
    p.add_swap("b24", "b23*", q(-2));
    p.add_swap("b24", "b23", one());
    p.add_swap("b24", "b24*", q(-2));
    // radius swaps: x r = q^-1 r x and x rinv = q rinv x for unstarred x,
    // with inverted factors for the starred letters
    for (g, fr, frinv) in [
        ("b23", q(-1), q(1)),
        ("b24", q(-1), q(1)),
        ("b23*", q(1), q(-1)),
        ("b24*", q(1), q(-1)),
    ] {
        p.add_swap(g, "r", fr);
        p.add_swap(g, "rinv", frinv);
    }
    p.add_poly(p.word(&["r", "rinv"])?, AlgebraElement::unit())?;
    p.add_poly(p.word(&["rinv", "r"])?, AlgebraElement::unit())?;
    let sphere_rhs = p.elem(&[(one(), &["r", "r"]), (-&one(), &["b23*", "b23"])])?;
    p.add_poly(p.word(&["b24*", "b24"])?, sphere_rhs)?;
    let b13 = p.elem(&[(q(1), &["b24*"])])?;
    let b14 = p.elem(&[(-&q(1), &["b23*"])])?;
    let beta = p.elem(&[(one(), &["r", "r"])])?;
    let betainv = p.elem(&[(one(), &["rinv", "rinv"])])?;
    p.aliases.insert("b13".into(), b13);
    p.aliases.insert("b14".into(), b14);
    p.aliases.insert("r2".into(), beta.clone());
    p.aliases.insert("beta".into(), beta);
    p.aliases.insert("betainv".into(), betainv);
    Ok(p)
}

/// Radius-extended intersection seen from the south.
fn chart_ns_ext() -> Result<Presentation, AlgError> {
    let mut p = Presentation::new("chart-ns-ext");
    for g in ["rinv", "r", "a23*", "a23", "a24*", "a24"] {
        p.add_gen(g, 0, false);
    }
    p.set_star_real("rinv");
    p.set_star_real("r");
    p.set_star_pair("a23", "a23*", one());
    p.set_star_pair("a24", "a24*", one());
    p.add_swap("a23", "a23*", q(2));
    p.add_swap("a24*", "a23*", one());
    p.add_swap("a24*", "a23", q(-2));
    p.add_swap("a24", "a23*", q(2));
    p.add_swap("a24", "a23", one());
    p.add_swap("a24", "a24*", q(2));
    for (g, fr, frinv) in [
        ("a23", q(-1), q(1)),
        ("a24", q(-1), q(1)),
        ("a23*", q(1), q(-1)),
        ("a24*", q(1), q(-1)),
    ] {
        p.add_swap(g, "r", fr);
        p.add_swap(g, "rinv", frinv);
    }
    p.add_poly(p.word(&["r", "rinv"])?, AlgebraElement::unit())?;
    p.add_poly(p.word(&["rinv", "r"])?, AlgebraElement::unit())?;
    // r^-2 = q^4 (a23* a23 + a24* a24), i.e. a24* a24 -> q^-4 rinv rinv - a23* a23
    let sphere_rhs = p.elem(&[(q(-4), &["rinv", "rinv"]), (-&one(), &["a23*", "a23"])])?;
    p.add_poly(p.word(&["a24*", "a24"])?, sphere_rhs)?;
    let a13 = p.elem(&[(q(3), &["a24*"])])?;
    let a14 = p.elem(&[(-&q(3), &["a23*"])])?;
    let alpha = p.elem(&[(one(), &["rinv", "rinv"])])?;
    let alphainv = p.elem(&[(one(), &["r", "r"])])?;
    p.aliases.insert("a13".into(), a13);
    p.aliases.insert("a14".into(), a14);
    p.aliases.insert("alpha".into(), alpha);
    p.aliases.insert("alphainv".into(), alphainv);
    Ok(p)
}

/// Commutative SU(2) coordinate algebra with the sphere rule
/// x24* x24 -> 1 - x23* x23.
fn su2() -> Result<Presentation, AlgError> {
    let mut p = Presentation::new("su2");
    for g in ["x23*", "x23", "x24*", "x24"] {
        p.add_gen(g, 0, false);
    }
    p.set_star_pair("x23", "x23*", one());
    p.set_star_pair("x24", "x24*", one());
    p.add_swap("x23", "x23*", one());
    p.add_swap("x24*", "x23*", one());
    p.add_swap("x24*", "x23", one());
    p.add_swap("x24", "x23*", one());
    p.add_swap("x24", "x23", one());
    p.add_swap("x24", "x24*", one());
    let sphere_rhs = p.elem(&[(one(), &[]), (-&one(), &["x23*", "x23"])])?;
    p.add_poly(p.word(&["x24*", "x24"])?, sphere_rhs)?;
    Ok(p)
}

/// Plucker-coordinate quadric algebra.
fn grassmannian_gens(p: &mut Presentation) {
    for g in ["l12", "l34", "l14", "l23", "l13", "l24"] {
        p.add_gen(g, 0, g == "l34");
    }
    p.set_star_real("l12");
    p.set_star_real("l34");
    p.set_star_pair("l13", "l24", q(1));
    p.set_star_pair("l14", "l23", -&q(1));
}

fn grassmannian_swaps(p: &mut Presentation) {
    let table: [(&str, &str, i64); 15] = [
        ("l34", "l12", 0),
        ("l14", "l12", 2),
        ("l14", "l34", 0),
        ("l23", "l12", -2),
        ("l23", "l34", 0),
        ("l23", "l14", -2),
        ("l13", "l12", 2),
        ("l13", "l34", 0),
        ("l13", "l14", 0),
        ("l13", "l23", 2),
        ("l24", "l12", -2),
        ("l24", "l34", 0),
        ("l24", "l14", -2),
        ("l24", "l23", 0),
        ("l24", "l13", -2),
    ];
    for (g, h, e) in table {
        p.add_swap(g, h, q(e));
    }
}

fn grassmannian_plucker(p: &mut Presentation) -> Result<(), AlgError> {
    let rhs = p.elem(&[(q(1), &["l12", "l34"]), (one(), &["l14", "l23"])])?;
    p.add_poly(p.word(&["l13", "l24"])?, rhs)
}

fn grassmannian() -> Result<Presentation, AlgError> {
    let mut p = Presentation::new("grassmannian");
    grassmannian_gens(&mut p);
    grassmannian_swaps(&mut p);
    grassmannian_plucker(&mut p)?;
    Ok(p)
}

/// Localization at the central Plucker coordinate l34. The inverse letter
/// sits next to l34 in the order so sorting brings inverse pairs together.
fn grassmannian_l34loc() -> Result<Presentation, AlgError> {
    let mut p = Presentation::new("grassmannian-l34loc");
    for g in ["l12", "l34inv", "l34", "l14", "l23", "l13", "l24"] {
        p.add_gen(g, 0, g == "l34" || g == "l34inv");
    }
    p.set_star_real("l12");
    p.set_star_real("l34");
    p.set_star_real("l34inv");
    p.set_star_pair("l13", "l24", q(1));
    p.set_star_pair("l14", "l23", -&q(1));
    grassmannian_swaps(&mut p);
    p.add_swap("l34inv", "l12", one());
    for g in ["l14", "l23", "l13", "l24"] {
        p.add_swap(g, "l34inv", one());
    }
    p.add_poly(p.word(&["l34", "l34inv"])?, AlgebraElement::unit())?;
    p.add_poly(p.word(&["l34inv", "l34"])?, AlgebraElement::unit())?;
    grassmannian_plucker(&mut p)?;
    Ok(p)
}

/// Localization at the non-central coordinate l12; the l12inv swap factors
/// are obtained from the l12 relations by formal inversion.
fn grassmannian_l12loc() -> Result<Presentation, AlgError> {
    let mut p = Presentation::new("grassmannian-l12loc");
    p.add_gen("l12inv", 0, false);
    grassmannian_gens(&mut p);
    p.set_star_real("l12inv");
    grassmannian_swaps(&mut p);
    for (g, e) in [("l13", -2i64), ("l14", -2), ("l23", 2), ("l24", 2), ("l34", 0)] {
        p.add_swap(g, "l12inv", q(e));
    }
    p.add_poly(p.word(&["l12", "l12inv"])?, AlgebraElement::unit())?;
    p.add_poly(p.word(&["l12inv", "l12"])?, AlgebraElement::unit())?;
    grassmannian_plucker(&mut p)?;
    Ok(p)
}

/// Commutative determinant-one chart variant (an SL(2) coordinate algebra);
/// carries no inherited star.
fn remark_aprime() -> Result<Presentation, AlgError> {
    let mut p = Presentation::new("remark-aprime");
    for g in ["a13", "a14", "a23", "a24"] {
        p.add_gen(g, 0, false);
    }
    p.add_swap("a14", "a13", one());
    p.add_swap("a23", "a13", one());
    p.add_swap("a23", "a14", one());
    p.add_swap("a24", "a13", one());
    p.add_swap("a24", "a14", one());
    p.add_swap("a24", "a23", one());
    let rhs = p.elem(&[(one(), &["a13", "a24"]), (-&one(), &[])])?;
    p.add_poly(p.word(&["a14", "a23"])?, rhs)?;
    Ok(p)
}

fn build_morphisms(pres: &BTreeMap<String, Presentation>) -> Result<BTreeMap<String, MorphismTable>, AlgError> {
    let mut out = BTreeMap::new();
    let n = &pres["chart-n"];
    let s = &pres["chart-s"];
    let sn = &pres["chart-sn-ext"];
    let ns = &pres["chart-ns-ext"];
    let l34 = &pres["grassmannian-l34loc"];
    let l12 = &pres["grassmannian-l12loc"];
    let ap = &pres["remark-aprime"];

    // The chart isomorphism: a_ij -> q^{+/-2} b_ij with coefficient
    // involution; in the star-closed alphabet every image carries q^2.
    let mut q_map = MorphismTable::new("Q", "chart-s", "chart-n").with_involution();
    for (g, h) in [("a23", "b23"), ("a23*", "b23*"), ("a24", "b24"), ("a24*", "b24*")] {
        q_map = q_map.image(s, g, n.elem(&[(q(2), &[h])])?);
    }
    out.insert("Q".into(), q_map);

    let mut q_inv = MorphismTable::new("Q-inv", "chart-n", "chart-s").with_involution();
    for (g, h) in [("b23", "a23"), ("b23*", "a23*"), ("b24", "a24"), ("b24*", "a24*")] {
        q_inv = q_inv.image(n, g, s.elem(&[(q(2), &[h])])?);
    }
    out.insert("Q-inv".into(), q_inv);

    // Extension to the radius-extended intersections, swapping r and rinv.
    let mut qt = MorphismTable::new("Qtilde", "chart-ns-ext", "chart-sn-ext").with_involution();
    for (g, h) in [("a23", "b23"), ("a23*", "b23*"), ("a24", "b24"), ("a24*", "b24*")] {
        qt = qt.image(ns, g, sn.elem(&[(q(2), &[h])])?);
    }
    qt = qt.image(ns, "r", sn.gen_elem("rinv")?);
    qt = qt.image(ns, "rinv", sn.gen_elem("r")?);
    out.insert("Qtilde".into(), qt);

    let mut qti = MorphismTable::new("Qtilde-inv", "chart-sn-ext", "chart-ns-ext").with_involution();
    for (g, h) in [("b23", "a23"), ("b23*", "a23*"), ("b24", "a24"), ("b24*", "a24*")] {
        qti = qti.image(sn, g, ns.elem(&[(q(2), &[h])])?);
    }
    qti = qti.image(sn, "r", ns.gen_elem("rinv")?);
    qti = qti.image(sn, "rinv", ns.gen_elem("r")?);
    out.insert("Qtilde-inv".into(), qti);

    // Sheaf restrictions onto the intersection.
    let mut rho_n = MorphismTable::new("rhoN", "chart-n", "chart-sn-ext");
    for g in ["b23", "b23*", "b24", "b24*"] {
        rho_n = rho_n.image(n, g, sn.gen_elem(g)?);
    }
    out.insert("rhoN".into(), rho_n);

    let mut rho_s = MorphismTable::new("rhoS", "chart-s", "chart-sn-ext").with_involution();
    for (g, h) in [("a23", "b23"), ("a23*", "b23*"), ("a24", "b24"), ("a24*", "b24*")] {
        rho_s = rho_s.image(s, g, sn.elem(&[(q(2), &[h])])?);
    }
    out.insert("rhoS".into(), rho_s);

    // Ore chart inclusions into the localized quadric algebra.
    let incl_n = MorphismTable::new("inclN", "chart-n", "grassmannian-l34loc")
        .image(n, "b23", l34.elem(&[(one(), &["l23", "l34inv"])])?)
        .image(n, "b23*", l34.elem(&[(-&q(-1), &["l14", "l34inv"])])?)
        .image(n, "b24", l34.elem(&[(one(), &["l24", "l34inv"])])?)
        .image(n, "b24*", l34.elem(&[(q(-1), &["l13", "l34inv"])])?);
    out.insert("inclN".into(), incl_n);

    let incl_s = MorphismTable::new("inclS", "chart-s", "grassmannian-l12loc")
        .image(s, "a23", l12.elem(&[(one(), &["l12inv", "l23"])])?)
        .image(s, "a23*", l12.elem(&[(-&q(-1), &["l14", "l12inv"])])?)
        .image(s, "a24", l12.elem(&[(one(), &["l12inv", "l24"])])?)
        .image(s, "a24*", l12.elem(&[(q(-1), &["l13", "l12inv"])])?);
    out.insert("inclS".into(), incl_s);

    // Determinant-one chart generators inside the south intersection,
    // rescaled by the inverse radius square.
    let embed = MorphismTable::new("aprime-embed", "remark-aprime", "chart-ns-ext")
        .image(ap, "a13", ns.elem(&[(q(3), &["a24*"])])?)
        .image(ap, "a14", ns.elem(&[(-&q(3), &["a23*"])])?)
        .image(ap, "a23", ns.elem(&[(q(-1), &["r", "r", "a23"])])?)
        .image(ap, "a24", ns.elem(&[(q(1), &["a24", "r", "r"])])?);
    out.insert("aprime-embed".into(), embed);

    Ok(out)
}

fn build_catalog() -> Result<Catalog, AlgError> {
    let mut pres = BTreeMap::new();
    for p in [
        grassmannian()?,
        grassmannian_l34loc()?,
        grassmannian_l12loc()?,
        chart_n()?,
        chart_s()?,
        chart_sn_ext()?,
        chart_ns_ext()?,
        su2()?,
        remark_aprime()?,
    ] {
        pres.insert(p.name.clone(), p);
    }
    let morphisms = build_morphisms(&pres)?;
    Ok(Catalog { pres, morphisms })
}

/// Helper: element of a named catalog presentation.
pub fn elem(
    pres: &Presentation,
    terms: &[(L, &[&str])],
) -> Result<AlgebraElement, AlgError> {
    pres.elem(terms)
}

/// Resolve a generator-or-alias name to an element.
pub fn resolve_symbol(pres: &Presentation, name: &str) -> Result<AlgebraElement, AlgError> {
    if pres.has_gen(name) {
        return pres.gen_elem(name);
    }
    pres.aliases
        .get(name)
        .cloned()
        .ok_or_else(|| AlgError::UnknownGenerator(name.to_string()))
}

/// Single-letter word helper used across the test suites.
pub fn letter(pres: &Presentation, name: &str) -> Word {
    Word(vec![pres.gen_index(name).expect("catalog letter")])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_builds() {
        let c = catalog();
        for n in PRESENTATION_NAMES {
            assert!(c.presentation(n).is_ok(), "missing {}", n);
        }
        for m in MORPHISM_NAMES {
            assert!(c.morphism(m).is_ok(), "missing {}", m);
        }
    }

    #[test]
    fn sn_ext_normal_forms_match_chart_relations() {
        let c = catalog();
        let sn = c.presentation("chart-sn-ext").unwrap();
        // b23 b23* -> q^-2 b23* b23
        let lhs = sn.elem(&[(L::one(), &["b23", "b23*"])]).unwrap();
        let rhs = sn.elem(&[(L::q_pow(-2), &["b23*", "b23"])]).unwrap();
        assert_eq!(lhs, rhs);
        // b24* b24 -> r r - b23* b23
        let lhs = sn.elem(&[(L::one(), &["b24*", "b24"])]).unwrap();
        let rhs = sn
            .elem(&[(L::one(), &["r", "r"]), (-&L::one(), &["b23*", "b23"])])
            .unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn sphere_relation_from_plucker_combination() {
        // r^2 = q^-1 (b13 b24 - b14 b23) inside the extended chart.
        let c = catalog();
        let sn = c.presentation("chart-sn-ext").unwrap();
        let b13 = sn.aliases["b13"].clone();
        let b14 = sn.aliases["b14"].clone();
        let b24 = sn.gen_elem("b24").unwrap();
        let b23 = sn.gen_elem("b23").unwrap();
        let prod = sn
            .mul(&b13, &b24)
            .unwrap()
            .sub(&sn.mul(&b14, &b23).unwrap());
        let lhs = prod.scale(&L::q_pow(-1));
        let rhs = sn.elem(&[(L::one(), &["r", "r"])]).unwrap();
        assert_eq!(sn.normal_form(&lhs).unwrap(), rhs);
    }

    #[test]
    fn q_is_star_isomorphism() {
        let c = catalog();
        let m = c.morphism("Q").unwrap();
        let s = c.presentation("chart-s").unwrap();
        let n = c.presentation("chart-n").unwrap();
        let checks = m.check(s, n).unwrap();
        for ch in &checks {
            assert!(ch.ok, "{} residual {}", ch.relation, ch.residual);
        }
        // Q(a23) = q^2 b23; Q(q * 1) = q^-1.
        let img = c.apply_morphism("Q", &s.gen_elem("a23").unwrap()).unwrap();
        assert_eq!(img, n.elem(&[(L::q_pow(2), &["b23"])]).unwrap());
        let img = c
            .apply_morphism("Q", &AlgebraElement::scalar(L::q()))
            .unwrap();
        assert_eq!(img, AlgebraElement::scalar(L::q_pow(-1)));
    }

    #[test]
    fn qtilde_sends_alpha_to_beta() {
        let c = catalog();
        let ns = c.presentation("chart-ns-ext").unwrap();
        let sn = c.presentation("chart-sn-ext").unwrap();
        // alpha written via the localized determinant expression
        let a13 = ns.aliases["a13"].clone();
        let a14 = ns.aliases["a14"].clone();
        let a24 = ns.gen_elem("a24").unwrap();
        let a23 = ns.gen_elem("a23").unwrap();
        let det = ns
            .mul(&a24, &a13)
            .unwrap()
            .sub(&ns.mul(&a23, &a14).unwrap());
        let alpha = ns.normal_form(&det.scale(&L::q_pow(-1))).unwrap();
        assert_eq!(alpha, ns.aliases["alpha"]);
        let img = c.apply_morphism("Qtilde", &alpha).unwrap();
        assert_eq!(img, sn.elem(&[(L::one(), &["r", "r"])]).unwrap());
    }

    #[test]
    fn all_catalog_morphisms_preserve_relations() {
        let c = catalog();
        for name in MORPHISM_NAMES {
            let m = c.morphism(name).unwrap();
            let src = c.presentation(&m.source).unwrap();
            let tgt = c.presentation(&m.target).unwrap();
            for ch in m.check(src, tgt).unwrap() {
                assert!(ch.ok, "{} residual {}", ch.relation, ch.residual);
            }
        }
    }

    #[test]
    fn corrupted_q_fails_check() {
        let c = catalog();
        let s = c.presentation("chart-s").unwrap();
        let n = c.presentation("chart-n").unwrap();
        let mut bad = MorphismTable::new("Q-bad", "chart-s", "chart-n").with_involution();
        for (g, h, e) in [
            ("a23", "b23", 1i64), // should be q^2
            ("a23*", "b23*", 2),
            ("a24", "b24", 2),
            ("a24*", "b24*", 2),
        ] {
            bad = bad.image(s, g, n.elem(&[(L::q_pow(e), &[h])]).unwrap());
        }
        let checks = bad.check(s, n).unwrap();
        assert!(checks.iter().any(|ch| !ch.ok));
    }

    #[test]
    fn plucker_real_form_identity() {
        // q l12 l34 - q^-1 l13 l13* - q^-1 l14 l14* = 0.
        let c = catalog();
        let g = c.presentation("grassmannian").unwrap();
        let l13 = g.gen_elem("l13").unwrap();
        let l14 = g.gen_elem("l14").unwrap();
        let t1 = g.elem(&[(L::q(), &["l12", "l34"])]).unwrap();
        let t2 = g
            .mul(&l13, &g.star(&l13).unwrap())
            .unwrap()
            .scale(&L::q_pow(-1));
        let t3 = g
            .mul(&l14, &g.star(&l14).unwrap())
            .unwrap()
            .scale(&L::q_pow(-1));
        let res = g.normal_form(&t1.sub(&t2).sub(&t3)).unwrap();
        assert!(res.is_zero(), "residual {}", g.display(&res));
    }

    #[test]
    fn star_compatibility_of_catalog_rules() {
        let c = catalog();
        for name in PRESENTATION_NAMES {
            let p = c.presentation(name).unwrap();
            let bad = p.star_compatibility_failures().unwrap();
            assert!(bad.is_empty(), "{}: {:?}", name, bad);
        }
    }

    #[test]
    fn confluence_spot_check() {
        let c = catalog();
        for name in PRESENTATION_NAMES {
            let p = c.presentation(name).unwrap();
            let fails = p.local_confluence(3).unwrap();
            assert!(fails.is_empty(), "{}: {:?}", name, fails);
        }
    }

    #[test]
    fn sn_overlap_example_joins() {
        let c = catalog();
        let sn = c.presentation("chart-sn-ext").unwrap();
        // b24* b24 rinv reduces (either way) to r - rinv b23* b23.
        let e = sn.elem(&[(L::one(), &["b24*", "b24", "rinv"])]).unwrap();
        let expect = sn
            .elem(&[(L::one(), &["r"]), (-&L::one(), &["rinv", "b23*", "b23"])])
            .unwrap();
        assert_eq!(e, expect);
    }

    #[test]
    fn swap_rules_symmetrize_at_q1() {
        let c = catalog();
        for name in PRESENTATION_NAMES {
            let p = c.presentation(name).unwrap();
            let k = p.gen_count() as u32;
            for g in 0..k {
                for h in 0..k {
                    let gh = AlgebraElement::from_term(Word(vec![g, h]), L::one());
                    let hg = AlgebraElement::from_term(Word(vec![h, g]), L::one());
                    let diff = p.normal_form(&gh.sub(&hg)).unwrap();
                    assert!(
                        diff.vanishes_at_q1(),
                        "{}: [{}, {}] does not vanish at q=1",
                        name,
                        p.gen_name(g),
                        p.gen_name(h)
                    );
                }
            }
        }
    }
}
