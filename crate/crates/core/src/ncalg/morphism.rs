//! Algebra-map tables: generator images plus an optional coefficient
//! involution `q -> q^-1` and an anti-morphism flag, with relation-
//! preservation and star-intertwining checks.

use super::rewrite::{AlgError, AlgebraElement, Presentation};
use crate::coeff::LaurentScalar;
use std::collections::BTreeMap;

/// A generator-image table defining an algebra map between two catalog
/// presentations.
#[derive(Debug, Clone)]
pub struct MorphismTable {
    pub name: String,
    pub source: String,
    pub target: String,
    /// source generator index -> image element in the target presentation
    pub images: BTreeMap<u32, AlgebraElement>,
    /// apply `q -> q^-1` to coefficients before substitution
    pub involute: bool,
    /// reverse words before substitution (anti-morphism)
    pub anti: bool,
}

#[derive(Debug, Clone)]
pub struct RelationCheck {
    pub relation: String,
    pub ok: bool,
    pub residual: String,
}

impl MorphismTable {
    pub fn new(name: &str, source: &str, target: &str) -> Self {
        MorphismTable {
            name: name.to_string(),
            source: source.to_string(),
            target: target.to_string(),
            images: BTreeMap::new(),
            involute: false,
            anti: false,
        }
    }

    pub fn image(mut self, src: &Presentation, gen: &str, elem: AlgebraElement) -> Self {
        let id = src.gen_index(gen).expect("morphism source generator");
        self.images.insert(id, elem);
        self
    }

    pub fn with_involution(mut self) -> Self {
        self.involute = true;
        self
    }

    /// Apply the table to an element of the source presentation.
    pub fn apply(
        &self,
        src: &Presentation,
        tgt: &Presentation,
        x: &AlgebraElement,
    ) -> Result<AlgebraElement, AlgError> {
        let mut out = AlgebraElement::zero();
        for (w, c) in &x.terms {
            let coeff = if self.involute { c.involute() } else { c.clone() };
            let mut acc = AlgebraElement::scalar(coeff);
            let letters: Vec<u32> = if self.anti {
                w.0.iter().rev().copied().collect()
            } else {
                w.0.clone()
            };
            for g in letters {
                let img = self.images.get(&g).ok_or_else(|| {
                    AlgError::UnknownGenerator(format!(
                        "{} has no image under {}",
                        src.gen_name(g),
                        self.name
                    ))
                })?;
                acc = tgt.mul(&acc, img)?;
            }
            out = out.add(&acc);
        }
        tgt.normal_form(&out)
    }

    /// Every defining relation of the source must map to zero, and the
    /// table must intertwine the stars on generators (when both sides
    /// carry one).
    pub fn check(
        &self,
        src: &Presentation,
        tgt: &Presentation,
    ) -> Result<Vec<RelationCheck>, AlgError> {
        let mut out = Vec::new();
        for rel in src.relations() {
            let img = self.apply(src, tgt, &rel.element)?;
            out.push(RelationCheck {
                relation: format!("{}: {}", self.name, rel.desc),
                ok: img.is_zero(),
                residual: tgt.display(&img),
            });
        }
        let stars_total = src.gens().iter().all(|g| g.star.is_some())
            && tgt.gens().iter().all(|g| g.star.is_some());
        if stars_total {
            for (i, g) in src.gens().iter().enumerate() {
                let ge = AlgebraElement::from_term(
                    super::rewrite::Word(vec![i as u32]),
                    LaurentScalar::one(),
                );
                let lhs = self.apply(src, tgt, &src.star(&ge)?)?;
                let rhs = tgt.star(&self.apply(src, tgt, &ge)?)?;
                let diff = tgt.normal_form(&lhs.sub(&rhs))?;
                out.push(RelationCheck {
                    relation: format!("{}: star intertwining on {}", self.name, g.name),
                    ok: diff.is_zero(),
                    residual: tgt.display(&diff),
                });
            }
        }
        Ok(out)
    }
}
