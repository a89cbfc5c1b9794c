//! Words, elements and the rewrite engine.
//!
//! A presentation holds an ordered generator list, swap rules
//! `g.h -> factor * h.g` for out-of-order adjacent pairs, and polynomial
//! rules `leading word -> lower element`. Rule application strictly
//! decreases a weighted monomial order (letter weight, then word length,
//! then lexicographic position), so reduction terminates; local confluence
//! is certified empirically and, where the derived rule set of a graded
//! extension is not confluent as listed, a bounded critical-pair completion
//! joins the overlaps at construction time.

use crate::coeff::LaurentScalar;
use num::Zero;
use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::sync::OnceLock;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum AlgError {
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("rule-application budget of {0} exceeded (mis-oriented rule set?)")]
    NonTerminating(u64),
    #[error("generator `{0}` has no star partner")]
    MissingStarPartner(String),
    #[error("cannot orient relation: {0}")]
    OrientationFailure(String),
    #[error("inconsistent rules: {0}")]
    InconsistentRules(String),
    #[error("incomplete rule set: {0}")]
    IncompleteRuleSet(String),
    #[error("completion did not stabilize: {0}")]
    CompletionDiverged(String),
}

/// A generator symbol of a presentation.
#[derive(Debug, Clone)]
pub struct GenSym {
    pub name: String,
    /// Form degree: 0 for coordinate letters, 1 for their differentials.
    pub degree: u8,
    /// `x* = coeff * partner`; None when the presentation has no star on x.
    pub star: Option<(u32, LaurentScalar)>,
    pub central: bool,
    /// Weight for the monomial order (default 1).
    pub weight: u32,
}

/// A word in the generators of one presentation; empty word is the unit.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(pub Vec<u32>);

impl Word {
    pub fn unit() -> Self {
        Word(Vec::new())
    }
    pub fn len(&self) -> usize {
        self.0.len()
    }
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Container order (length, then letters); the presentation's monomial
/// order additionally weights letters and is used for rule orientation.
impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A finite linear combination of normal-form words.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AlgebraElement {
    pub terms: BTreeMap<Word, LaurentScalar>,
}

impl AlgebraElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn unit() -> Self {
        Self::from_term(Word::unit(), LaurentScalar::one())
    }

    pub fn scalar(c: LaurentScalar) -> Self {
        Self::from_term(Word::unit(), c)
    }

    pub fn from_term(w: Word, c: LaurentScalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(w, c);
        }
        AlgebraElement { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, w: Word, c: LaurentScalar) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(w) {
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
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), -c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        AlgebraElement {
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &LaurentScalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        AlgebraElement {
            terms: self.terms.iter().map(|(w, k)| (w.clone(), k * c)).collect(),
        }
    }

    /// Coefficient-wise involution `q -> q^-1`.
    pub fn involute_coeffs(&self) -> Self {
        AlgebraElement {
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.clone(), c.involute()))
                .collect(),
        }
    }

    /// True when every coefficient vanishes under `q -> 1`.
    pub fn vanishes_at_q1(&self) -> bool {
        self.terms.values().all(|c| c.eval_q1().is_zero())
    }

    /// Coefficient-wise evaluation at `q = 1` (dropping killed terms).
    pub fn eval_q1(&self) -> BTreeMap<Word, num::BigRational> {
        self.terms
            .iter()
            .filter_map(|(w, c)| {
                let v = c.eval_q1();
                if num::Zero::is_zero(&v) {
                    None
                } else {
                    Some((w.clone(), v))
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone)]
pub struct PolyRule {
    pub lhs: Word,
    pub rhs: AlgebraElement,
}

#[derive(Debug, Clone)]
pub struct ConfluenceFailure {
    pub word: String,
    pub forms: Vec<String>,
}

/// A finitely presented algebra with oriented rewrite rules.
#[derive(Debug, Clone)]
pub struct Presentation {
    pub name: String,
    gens: Vec<GenSym>,
    by_name: HashMap<String, u32>,
    /// `(g, h) -> factor` meaning the adjacent pair `g h` (with g listed
    /// after h in the generator order) rewrites to `factor * h g`.
    swaps: BTreeMap<(u32, u32), LaurentScalar>,
    polys: Vec<PolyRule>,
    polys_by_head: BTreeMap<u32, Vec<usize>>,
    /// Defined abbreviations usable in expressions (e.g. `b13 = q*b24*`).
    pub aliases: BTreeMap<String, AlgebraElement>,
}

fn rule_budget() -> u64 {
    static BUDGET: OnceLock<u64> = OnceLock::new();
    *BUDGET.get_or_init(|| {
        std::env::var("NQS_RULE_BUDGET")
            .ok()
            .and_then(|v| v.parse().ok())
            .unwrap_or(1_000_000)
    })
}

impl Presentation {
    pub fn new(name: &str) -> Self {
        Presentation {
            name: name.to_string(),
            gens: Vec::new(),
            by_name: HashMap::new(),
            swaps: BTreeMap::new(),
            polys: Vec::new(),
            polys_by_head: BTreeMap::new(),
            aliases: BTreeMap::new(),
        }
    }

    pub fn add_gen(&mut self, name: &str, degree: u8, central: bool) -> u32 {
        let id = self.gens.len() as u32;
        self.gens.push(GenSym {
            name: name.to_string(),
            degree,
            star: None,
            central,
            weight: 1,
        });
        self.by_name.insert(name.to_string(), id);
        id
    }

    pub fn set_weight(&mut self, name: &str, weight: u32) {
        let id = self.by_name[name];
        self.gens[id as usize].weight = weight;
    }

    /// Declare `a* = coeff * b` (and symmetrically `b* = coeff^-1 * a`).
    pub fn set_star_pair(&mut self, a: &str, b: &str, coeff: LaurentScalar) {
        let ia = self.by_name[a];
        let ib = self.by_name[b];
        let inv = coeff.inverse().expect("star coefficient must be a unit");
        self.gens[ia as usize].star = Some((ib, coeff));
        self.gens[ib as usize].star = Some((ia, inv));
    }

    pub fn set_star_real(&mut self, a: &str) {
        let ia = self.by_name[a];
        self.gens[ia as usize].star = Some((ia, LaurentScalar::one()));
    }

    pub fn gens(&self) -> &[GenSym] {
        &self.gens
    }

    pub fn gen_count(&self) -> usize {
        self.gens.len()
    }

    pub fn gen_name(&self, id: u32) -> &str {
        &self.gens[id as usize].name
    }

    pub fn gen_degree(&self, id: u32) -> u8 {
        self.gens[id as usize].degree
    }

    pub fn gen_index(&self, name: &str) -> Result<u32, AlgError> {
        self.by_name
            .get(name)
            .copied()
            .ok_or_else(|| AlgError::UnknownGenerator(name.to_string()))
    }

    pub fn has_gen(&self, name: &str) -> bool {
        self.by_name.contains_key(name)
    }

    pub fn gen_elem(&self, name: &str) -> Result<AlgebraElement, AlgError> {
        Ok(AlgebraElement::from_term(
            Word(vec![self.gen_index(name)?]),
            LaurentScalar::one(),
        ))
    }

    pub fn word(&self, names: &[&str]) -> Result<Word, AlgError> {
        let mut w = Vec::with_capacity(names.len());
        for n in names {
            w.push(self.gen_index(n)?);
        }
        Ok(Word(w))
    }

    /// Build an element from (coefficient, letters) pairs and normal-form it.
    pub fn elem(&self, terms: &[(LaurentScalar, &[&str])]) -> Result<AlgebraElement, AlgError> {
        let mut e = AlgebraElement::zero();
        for (c, names) in terms {
            e.add_term(self.word(names)?, c.clone());
        }
        self.normal_form(&e)
    }

    /// Total form degree of a word.
    pub fn word_degree(&self, w: &Word) -> u32 {
        w.0.iter().map(|&g| self.gens[g as usize].degree as u32).sum()
    }

    pub fn word_weight(&self, w: &Word) -> u64 {
        w.0.iter().map(|&g| self.gens[g as usize].weight as u64).sum()
    }

    /// The monomial order used for rule orientation: weight, then length,
    /// then lexicographic on generator positions.
    pub fn cmp_words(&self, a: &Word, b: &Word) -> Ordering {
        self.word_weight(a)
            .cmp(&self.word_weight(b))
            .then_with(|| a.0.len().cmp(&b.0.len()))
            .then_with(|| a.0.cmp(&b.0))
    }

    pub fn leading_word<'a>(&self, e: &'a AlgebraElement) -> Option<&'a Word> {
        e.terms.keys().max_by(|a, b| self.cmp_words(a, b))
    }

    /// Install the swap rule `g h -> factor * h g`; `g` must come after `h`
    /// in the generator order so that the rule decreases the order.
    pub fn add_swap(&mut self, g: &str, h: &str, factor: LaurentScalar) {
        let ig = self.by_name[g];
        let ih = self.by_name[h];
        assert!(ig > ih, "swap rule {} {} must reorder downwards", g, h);
        assert!(!factor.is_zero());
        self.swaps.insert((ig, ih), factor);
    }

    /// Install the polynomial rule `lhs -> rhs`; every word of `rhs` must be
    /// smaller than `lhs` in the monomial order.
    pub fn add_poly(&mut self, lhs: Word, rhs: AlgebraElement) -> Result<(), AlgError> {
        for w in rhs.terms.keys() {
            if self.cmp_words(w, &lhs) != Ordering::Less {
                return Err(AlgError::OrientationFailure(format!(
                    "rule {} -> {} does not decrease the monomial order",
                    self.display_word(&lhs),
                    self.display(&rhs)
                )));
            }
        }
        let head = lhs.0[0];
        self.polys_by_head
            .entry(head)
            .or_default()
            .push(self.polys.len());
        self.polys.push(PolyRule { lhs, rhs });
        Ok(())
    }

    pub fn poly_rules(&self) -> &[PolyRule] {
        &self.polys
    }

    pub fn swap_rules(&self) -> impl Iterator<Item = (&(u32, u32), &LaurentScalar)> {
        self.swaps.iter()
    }

    /// Factor sigma with `g h = sigma * h g`, consulting the swap table in
    /// either orientation. None when no swap relation is declared.
    pub fn swap_factor(&self, g: u32, h: u32) -> Option<LaurentScalar> {
        if let Some(f) = self.swaps.get(&(g, h)) {
            return Some(f.clone());
        }
        self.swaps
            .get(&(h, g))
            .map(|f| f.inverse().expect("swap factors are units"))
    }

    /// First applicable rewrite at the leftmost position: polynomial rules
    /// take precedence over the swap at the same position.
    fn first_step(&self, w: &Word) -> Option<AlgebraElement> {
        for i in 0..w.0.len() {
            if let Some(e) = self.step_at(w, i) {
                return Some(e);
            }
        }
        None
    }

    /// Try to rewrite at position `i`; returns the replacement element for
    /// the whole word.
    fn step_at(&self, w: &Word, i: usize) -> Option<AlgebraElement> {
        if let Some(rules) = self.polys_by_head.get(&w.0[i]) {
            for &ri in rules {
                let rule = &self.polys[ri];
                let l = rule.lhs.0.len();
                if i + l <= w.0.len() && w.0[i..i + l] == rule.lhs.0[..] {
                    return Some(self.splice(w, i, l, &rule.rhs, &LaurentScalar::one()));
                }
            }
        }
        if i + 1 < w.0.len() {
            let (g, h) = (w.0[i], w.0[i + 1]);
            if g > h {
                if let Some(f) = self.swaps.get(&(g, h)) {
                    let mut repl = AlgebraElement::zero();
                    repl.add_term(Word(vec![h, g]), f.clone());
                    return Some(self.splice(w, i, 2, &repl, &LaurentScalar::one()));
                }
            }
        }
        None
    }

    /// All single-step rewrites of `w` (every rule at every position), used
    /// by the confluence checker.
    pub fn all_steps(&self, w: &Word) -> Vec<AlgebraElement> {
        let mut out = Vec::new();
        for i in 0..w.0.len() {
            if let Some(rules) = self.polys_by_head.get(&w.0[i]) {
                for &ri in rules {
                    let rule = &self.polys[ri];
                    let l = rule.lhs.0.len();
                    if i + l <= w.0.len() && w.0[i..i + l] == rule.lhs.0[..] {
                        out.push(self.splice(w, i, l, &rule.rhs, &LaurentScalar::one()));
                    }
                }
            }
            if i + 1 < w.0.len() {
                let (g, h) = (w.0[i], w.0[i + 1]);
                if g > h {
                    if let Some(f) = self.swaps.get(&(g, h)) {
                        let mut repl = AlgebraElement::zero();
                        repl.add_term(Word(vec![h, g]), f.clone());
                        out.push(self.splice(w, i, 2, &repl, &LaurentScalar::one()));
                    }
                }
            }
        }
        out
    }

    fn splice(
        &self,
        w: &Word,
        i: usize,
        len: usize,
        repl: &AlgebraElement,
        coeff: &LaurentScalar,
    ) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for (rw, rc) in &repl.terms {
            let mut nw = Vec::with_capacity(w.0.len() - len + rw.0.len());
            nw.extend_from_slice(&w.0[..i]);
            nw.extend_from_slice(&rw.0);
            nw.extend_from_slice(&w.0[i + len..]);
            out.add_term(Word(nw), rc * coeff);
        }
        out
    }

    /// Reduce an element to its canonical normal form.
    pub fn normal_form(&self, e: &AlgebraElement) -> Result<AlgebraElement, AlgError> {
        let budget = rule_budget();
        let mut used = 0u64;
        let mut done = AlgebraElement::zero();
        let mut pending: BTreeMap<Word, LaurentScalar> = e.terms.clone();
        while let Some((w, c)) = pending.pop_last() {
            if c.is_zero() {
                continue;
            }
            match self.first_step(&w) {
                None => done.add_term(w, c),
                Some(repl) => {
                    used += 1;
                    if used > budget {
                        return Err(AlgError::NonTerminating(budget));
                    }
                    for (nw, nc) in repl.terms {
                        let add = &nc * &c;
                        if add.is_zero() {
                            continue;
                        }
                        use std::collections::btree_map::Entry;
                        match pending.entry(nw) {
                            Entry::Vacant(v) => {
                                v.insert(add);
                            }
                            Entry::Occupied(mut o) => {
                                let s = &*o.get() + &add;
                                if s.is_zero() {
                                    o.remove();
                                } else {
                                    *o.get_mut() = s;
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(done)
    }

    pub fn mul(
        &self,
        a: &AlgebraElement,
        b: &AlgebraElement,
    ) -> Result<AlgebraElement, AlgError> {
        let mut prod = AlgebraElement::zero();
        for (wa, ca) in &a.terms {
            for (wb, cb) in &b.terms {
                let mut w = Vec::with_capacity(wa.0.len() + wb.0.len());
                w.extend_from_slice(&wa.0);
                w.extend_from_slice(&wb.0);
                prod.add_term(Word(w), ca * cb);
            }
        }
        self.normal_form(&prod)
    }

    pub fn mul_many(&self, factors: &[AlgebraElement]) -> Result<AlgebraElement, AlgError> {
        let mut acc = AlgebraElement::unit();
        for f in factors {
            acc = self.mul(&acc, f)?;
        }
        Ok(acc)
    }

    pub fn pow(&self, a: &AlgebraElement, n: u32) -> Result<AlgebraElement, AlgError> {
        let mut acc = AlgebraElement::unit();
        for _ in 0..n {
            acc = self.mul(&acc, a)?;
        }
        Ok(acc)
    }

    /// Star: reverse the word, star each letter (coefficients are fixed,
    /// q being real), then normal form.
    pub fn star(&self, e: &AlgebraElement) -> Result<AlgebraElement, AlgError> {
        let mut out = AlgebraElement::zero();
        for (w, c) in &e.terms {
            let mut coeff = c.clone();
            let mut nw = Vec::with_capacity(w.0.len());
            for &g in w.0.iter().rev() {
                let gs = &self.gens[g as usize];
                let (sg, sc) = gs
                    .star
                    .as_ref()
                    .ok_or_else(|| AlgError::MissingStarPartner(gs.name.clone()))?;
                nw.push(*sg);
                coeff = &coeff * sc;
            }
            out.add_term(Word(nw), coeff);
        }
        self.normal_form(&out)
    }

    pub fn display_word(&self, w: &Word) -> String {
        if w.is_empty() {
            return "1".to_string();
        }
        w.0.iter()
            .map(|&g| self.gens[g as usize].name.clone())
            .collect::<Vec<_>>()
            .join(" * ")
    }

    pub fn display(&self, e: &AlgebraElement) -> String {
        if e.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        let mut first = true;
        for (w, c) in &e.terms {
            let cs = c.to_string();
            let (sign, mag) = if let Some(stripped) = cs.strip_prefix('-') {
                if c.as_monomial().is_some() {
                    ("-", stripped.to_string())
                } else {
                    ("+", format!("({})", cs))
                }
            } else if c.as_monomial().is_some() {
                ("+", cs)
            } else {
                ("+", format!("({})", cs))
            };
            if first {
                if sign == "-" {
                    out.push('-');
                }
                first = false;
            } else {
                let _ = write!(out, " {} ", sign);
            }
            if w.is_empty() {
                let _ = write!(out, "{}", mag);
            } else if mag == "1" {
                let _ = write!(out, "{}", self.display_word(w));
            } else {
                let _ = write!(out, "{} * {}", mag, self.display_word(w));
            }
        }
        out
    }

    /// Enumerate all words up to `max_len` and check every one-step fork
    /// rejoins at a common normal form.
    pub fn local_confluence(&self, max_len: usize) -> Result<Vec<ConfluenceFailure>, AlgError> {
        let n = self.gens.len() as u32;
        let mut failures = Vec::new();
        let mut stack: Vec<Vec<u32>> = vec![Vec::new()];
        while let Some(w) = stack.pop() {
            if w.len() >= 2 {
                let word = Word(w.clone());
                let steps = self.all_steps(&word);
                if steps.len() > 1 {
                    let mut forms: Vec<AlgebraElement> = Vec::new();
                    for s in &steps {
                        forms.push(self.normal_form(s)?);
                    }
                    let first = &forms[0];
                    if forms.iter().any(|f| f != first) {
                        let mut seen: Vec<String> =
                            forms.iter().map(|f| self.display(f)).collect();
                        seen.sort();
                        seen.dedup();
                        if seen.len() > 1 {
                            failures.push(ConfluenceFailure {
                                word: self.display_word(&word),
                                forms: seen,
                            });
                        }
                    }
                }
            }
            if w.len() < max_len {
                for g in 0..n {
                    let mut nw = w.clone();
                    nw.push(g);
                    stack.push(nw);
                }
            }
        }
        Ok(failures)
    }

    /// Bounded critical-pair completion: join every overlap of rule
    /// left-hand sides, adding oriented rules for unjoinable pairs, until
    /// the system is stable. Only used while constructing graded catalog
    /// presentations whose listed relations do not form a confluent system
    /// on their own.
    pub fn complete(&mut self, max_rounds: usize, max_new_rules: usize) -> Result<usize, AlgError> {
        let mut added = 0usize;
        for _ in 0..max_rounds {
            let pairs = self.critical_words();
            let mut new_rules: Vec<(Word, AlgebraElement)> = Vec::new();
            for w in &pairs {
                let steps = self.all_steps(w);
                if steps.len() < 2 {
                    continue;
                }
                let mut forms = Vec::new();
                for s in &steps {
                    forms.push(self.normal_form(s)?);
                }
                for f in &forms[1..] {
                    if f != &forms[0] {
                        let diff = forms[0].sub(f);
                        if diff.is_zero() {
                            continue;
                        }
                        if std::env::var("NQS_DEBUG_RULES").is_ok() {
                            eprintln!(
                                "[complete {}] word {} forks:\n  {}\n  {}",
                                self.name,
                                self.display_word(w),
                                self.display(&forms[0]),
                                self.display(f)
                            );
                        }
                        let (lhs, rhs) = self.orient(&diff)?;
                        if !new_rules.iter().any(|(l, _)| *l == lhs) {
                            new_rules.push((lhs, rhs));
                        }
                    }
                }
            }
            if new_rules.is_empty() {
                return Ok(added);
            }
            for (lhs, rhs) in new_rules {
                // Skip if an equivalent rule emerged earlier this round.
                let probe = AlgebraElement::from_term(lhs.clone(), LaurentScalar::one());
                let reduced = self.normal_form(&probe)?;
                let target = self.normal_form(&rhs)?;
                if reduced == target {
                    continue;
                }
                self.add_poly(lhs, target)?;
                added += 1;
                if added > max_new_rules {
                    return Err(AlgError::CompletionDiverged(format!(
                        "more than {} completion rules in `{}`",
                        max_new_rules, self.name
                    )));
                }
            }
        }
        Err(AlgError::CompletionDiverged(format!(
            "no fixpoint after {} rounds in `{}`",
            max_rounds, self.name
        )))
    }

    /// Orient a relation `e = 0` into `leading -> rest`, dividing by the
    /// leading coefficient (which must be a unit of the coefficient ring).
    pub fn orient(&self, e: &AlgebraElement) -> Result<(Word, AlgebraElement), AlgError> {
        let lead = self
            .leading_word(e)
            .ok_or_else(|| AlgError::OrientationFailure("zero relation".into()))?
            .clone();
        let c = e.terms[&lead].clone();
        let cinv = c.inverse().map_err(|_| {
            AlgError::OrientationFailure(format!(
                "leading coefficient `{}` of `{}` is not a unit",
                c,
                self.display(e)
            ))
        })?;
        let mut rest = AlgebraElement::zero();
        for (w, k) in &e.terms {
            if *w != lead {
                rest.add_term(w.clone(), -&(k * &cinv));
            }
        }
        Ok((lead, rest))
    }

    /// Words where two rule applications overlap, up to combined length.
    fn critical_words(&self) -> Vec<Word> {
        let mut lhss: Vec<Word> = Vec::new();
        for ((g, h), _) in &self.swaps {
            lhss.push(Word(vec![*g, *h]));
        }
        for p in &self.polys {
            lhss.push(p.lhs.clone());
        }
        let mut out: Vec<Word> = Vec::new();
        for u in &lhss {
            for v in &lhss {
                // Overlap: a proper suffix of u equals a prefix of v.
                for k in 1..=u.len().min(v.len()) {
                    if u.0[u.len() - k..] == v.0[..k] {
                        let mut w = u.0.clone();
                        w.extend_from_slice(&v.0[k..]);
                        if w.len() > u.len().max(v.len()) || u != v {
                            out.push(Word(w));
                        }
                    }
                }
                // Containment: v occurs inside u.
                if v.len() < u.len() {
                    for i in 0..=u.len() - v.len() {
                        if u.0[i..i + v.len()] == v.0[..] {
                            out.push(u.clone());
                        }
                    }
                }
            }
        }
        out.sort();
        out.dedup();
        out
    }

    /// Every rule, stated as a relation `lhs - rhs`, must be star-invariant:
    /// star of the relation reduces to zero. Returns failing descriptions.
    pub fn star_compatibility_failures(&self) -> Result<Vec<String>, AlgError> {
        if self.gens.iter().any(|g| g.star.is_none()) {
            return Ok(Vec::new()); // no total star on this presentation
        }
        let mut bad = Vec::new();
        for rel in self.relations() {
            let starred = self.star(&rel.element)?;
            if !self.normal_form(&starred)?.is_zero() {
                bad.push(rel.desc);
            }
        }
        Ok(bad)
    }

    /// All defining relations as (description, element-that-reduces-to-zero).
    pub fn relations(&self) -> Vec<Relation> {
        let mut out = Vec::new();
        for ((g, h), f) in &self.swaps {
            let mut e = AlgebraElement::zero();
            e.add_term(Word(vec![*g, *h]), LaurentScalar::one());
            e.add_term(Word(vec![*h, *g]), -f);
            out.push(Relation {
                desc: format!(
                    "{} {} = ({}) {} {}",
                    self.gen_name(*g),
                    self.gen_name(*h),
                    f,
                    self.gen_name(*h),
                    self.gen_name(*g)
                ),
                element: e,
            });
        }
        for p in &self.polys {
            let mut e = AlgebraElement::from_term(p.lhs.clone(), LaurentScalar::one());
            e = e.sub(&p.rhs);
            out.push(Relation {
                desc: format!("{} -> {}", self.display_word(&p.lhs), self.display(&p.rhs)),
                element: e,
            });
        }
        out
    }

    /// Whether a word is already in normal form.
    pub fn is_normal(&self, w: &Word) -> bool {
        self.first_step(w).is_none()
    }

    /// All normal-form words of length at most `len`.
    pub fn words_up_to(&self, len: usize) -> Vec<Word> {
        let n = self.gens.len() as u32;
        let mut out = Vec::new();
        let mut stack = vec![Vec::new()];
        while let Some(w) = stack.pop() {
            let word = Word(w.clone());
            if self.is_normal(&word) {
                out.push(word);
                if w.len() < len {
                    for g in 0..n {
                        let mut nw = w.clone();
                        nw.push(g);
                        stack.push(nw);
                    }
                }
            }
        }
        out.sort();
        out
    }

    /// A deterministic pseudo-random element for property checks.
    pub fn random_element<R: rand::Rng>(
        &self,
        rng: &mut R,
        max_len: usize,
        max_terms: usize,
    ) -> AlgebraElement {
        let n = self.gens.len() as u32;
        let terms = rng.random_range(1..=max_terms);
        let mut e = AlgebraElement::zero();
        for _ in 0..terms {
            let len = rng.random_range(0..=max_len);
            let w: Vec<u32> = (0..len).map(|_| rng.random_range(0..n)).collect();
            let coeff = LaurentScalar::monomial(
                rng.random_range(-2..=2),
                crate::coeff::rat(rng.random_range(-3..=3i64), 1),
            );
            e.add_term(Word(w), coeff);
        }
        e
    }

    /// Random element of a fixed form degree (for graded presentations).
    pub fn random_homogeneous<R: rand::Rng>(
        &self,
        rng: &mut R,
        degree: u32,
        plain_len: usize,
        max_terms: usize,
    ) -> AlgebraElement {
        let deg0: Vec<u32> = (0..self.gens.len() as u32)
            .filter(|&g| self.gens[g as usize].degree == 0)
            .collect();
        let deg1: Vec<u32> = (0..self.gens.len() as u32)
            .filter(|&g| self.gens[g as usize].degree == 1)
            .collect();
        let mut e = AlgebraElement::zero();
        for _ in 0..rng.random_range(1..=max_terms) {
            let mut w = Vec::new();
            for _ in 0..rng.random_range(0..=plain_len) {
                w.push(deg0[rng.random_range(0..deg0.len())]);
            }
            for _ in 0..degree {
                let at = rng.random_range(0..=w.len());
                w.insert(at, deg1[rng.random_range(0..deg1.len())]);
            }
            let coeff = LaurentScalar::monomial(
                rng.random_range(-2..=2),
                crate::coeff::rat(rng.random_range(-3..=3i64).max(1), 1),
            );
            e.add_term(Word(w), coeff);
        }
        e
    }
}

#[derive(Debug, Clone)]
pub struct Relation {
    pub desc: String,
    pub element: AlgebraElement,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::LaurentScalar as L;

    /// Two letters x < y with y x -> q^2 x y and y = x*.
    fn toy() -> Presentation {
        let mut p = Presentation::new("toy");
        p.add_gen("x", 0, false);
        p.add_gen("y", 0, false);
        p.set_star_pair("x", "y", L::one());
        p.add_swap("y", "x", L::q_pow(2));
        p
    }

    #[test]
    fn swap_normal_form() {
        let p = toy();
        let yx = p.elem(&[(L::one(), &["y", "x"])]).unwrap();
        let expect = p.elem(&[(L::q_pow(2), &["x", "y"])]).unwrap();
        assert_eq!(yx, expect);
    }

    #[test]
    fn unit_word_is_normal() {
        let p = toy();
        let one = p.normal_form(&AlgebraElement::unit()).unwrap();
        assert_eq!(one, AlgebraElement::unit());
    }

    #[test]
    fn normal_form_idempotent() {
        let p = toy();
        let e = p.elem(&[(L::q(), &["y", "x", "y"]), (L::from_int(2), &["x"])]).unwrap();
        assert_eq!(p.normal_form(&e).unwrap(), e);
    }

    #[test]
    fn star_reverses_and_is_involutive() {
        let p = toy();
        // (q x)* = q y and (x y)* = y* x* = x y.
        let e = p.elem(&[(L::q(), &["x"])]).unwrap();
        assert_eq!(p.star(&e).unwrap(), p.elem(&[(L::q(), &["y"])]).unwrap());
        let xy = p.elem(&[(L::one(), &["x", "y"])]).unwrap();
        let lhs = p.star(&xy).unwrap();
        let rhs = p
            .mul(
                &p.star(&p.gen_elem("y").unwrap()).unwrap(),
                &p.star(&p.gen_elem("x").unwrap()).unwrap(),
            )
            .unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(p.star(&lhs).unwrap(), xy);
    }

    #[test]
    fn poly_rule_applies_inside_words() {
        let mut p = toy();
        // y y -> 1 - x
        let rhs = p
            .elem(&[(L::one(), &[]), (-&L::one(), &["x"])])
            .unwrap();
        let lhs = p.word(&["y", "y"]).unwrap();
        p.add_poly(lhs, rhs).unwrap();
        let e = p.elem(&[(L::one(), &["x", "y", "y"])]).unwrap();
        let expect = p.elem(&[(L::one(), &["x"]), (-&L::one(), &["x", "x"])]).unwrap();
        assert_eq!(e, expect);
    }

    #[test]
    fn confluence_of_toy_is_clean() {
        let p = toy();
        assert!(p.local_confluence(4).unwrap().is_empty());
    }

    #[test]
    fn orientation_rejects_increasing_rules() {
        let mut p = toy();
        let lhs = p.word(&["x"]).unwrap();
        let rhs = p.elem(&[(L::one(), &["x", "x"])]).unwrap();
        assert!(p.add_poly(lhs, rhs).is_err());
    }
}
