//! Finitely presented *-algebras over ℚ(i)(ℏ) with normal-form rewriting.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use rand::Rng;

use crate::error::{Error, Result};
use crate::scalar::{join_signed, split_sign, GaussRat, Scalar};

/// A word over the generator alphabet, stored as generator indices.
/// The empty word is the unit.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Word(pub Vec<u8>);

impl Word {
    pub fn unit() -> Self {
        Word(Vec::new())
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, o: &Word) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + o.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&o.0);
        Word(v)
    }

    /// Number of occurrences of generator `g`.
    pub fn count(&self, g: u8) -> usize {
        self.0.iter().filter(|&&x| x == g).count()
    }
}

impl Ord for Word {
    /// Graded lexicographic order: shorter words first, then letterwise.
    fn cmp(&self, o: &Self) -> Ordering {
        self.0.len().cmp(&o.0.len()).then_with(|| self.0.cmp(&o.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// A rewrite rule `lhs → Σ c·w`; every word on the right is smaller than `lhs`.
#[derive(Clone, Debug)]
pub struct Rule {
    pub lhs: Word,
    pub rhs: Vec<(Word, Scalar)>,
}

/// A named inner derivation `δ(f) = c·[g, f]`.
#[derive(Clone, Debug)]
pub struct DerivationSpec {
    pub name: String,
    pub generator: Vec<(Word, Scalar)>,
    pub prefactor: Scalar,
}

/// Generator alphabet, involution, rewrite rules and registered derivations.
#[derive(Debug)]
pub struct Presentation {
    id: String,
    names: Vec<String>,
    involution: Vec<u8>,
    rules: Vec<Rule>,
    by_first: Vec<Vec<usize>>,
    hbar: Scalar,
    aliases: Vec<(String, Vec<(Word, Scalar)>)>,
    derivations: Vec<DerivationSpec>,
    structure: Vec<Vec<Vec<Scalar>>>,
}

/// Incremental construction of a [`Presentation`].
pub struct PresentationBuilder {
    id: String,
    names: Vec<String>,
    star_names: Vec<String>,
    rules: Vec<(Vec<&'static str>, Vec<(Scalar, Vec<&'static str>)>)>,
    hbar: Scalar,
    aliases: Vec<(String, Vec<(Scalar, Vec<&'static str>)>)>,
    derivations: Vec<(String, Vec<(Scalar, Vec<&'static str>)>, Scalar)>,
    structure: Vec<(usize, usize, usize, Scalar)>,
}

impl PresentationBuilder {
    pub fn new(id: impl Into<String>, hbar: Scalar) -> Self {
        PresentationBuilder {
            id: id.into(),
            names: Vec::new(),
            star_names: Vec::new(),
            rules: Vec::new(),
            hbar,
            aliases: Vec::new(),
            derivations: Vec::new(),
            structure: Vec::new(),
        }
    }

    /// Declares a generator, in increasing order, together with the name of its adjoint.
    pub fn generator(mut self, name: &str, star: &str) -> Self {
        self.names.push(name.to_string());
        self.star_names.push(star.to_string());
        self
    }

    pub fn rule(mut self, lhs: Vec<&'static str>, rhs: Vec<(Scalar, Vec<&'static str>)>) -> Self {
        self.rules.push((lhs, rhs));
        self
    }

    pub fn alias(mut self, name: &str, value: Vec<(Scalar, Vec<&'static str>)>) -> Self {
        self.aliases.push((name.to_string(), value));
        self
    }

    pub fn derivation(mut self, name: &str, g: Vec<(Scalar, Vec<&'static str>)>, c: Scalar) -> Self {
        self.derivations.push((name.to_string(), g, c));
        self
    }

    /// Records `[δ_a, δ_b] = f·δ_c` (and the antisymmetric partner).
    pub fn bracket(mut self, a: usize, b: usize, c: usize, f: Scalar) -> Self {
        self.structure.push((a, b, c, f));
        self
    }

    pub fn build(self) -> Result<Arc<Presentation>> {
        let index = |s: &str| -> Result<u8> {
            self.names
                .iter()
                .position(|n| n == s)
                .map(|k| k as u8)
                .ok_or_else(|| Error::UnknownGenerator(s.to_string()))
        };
        let word = |w: &[&str]| -> Result<Word> { w.iter().map(|s| index(s)).collect::<Result<Vec<_>>>().map(Word) };
        let terms = |t: &[(Scalar, Vec<&str>)]| -> Result<Vec<(Word, Scalar)>> {
            t.iter().map(|(c, w)| Ok((word(w)?, c.clone()))).collect()
        };
        let involution = self.star_names.iter().map(|s| index(s)).collect::<Result<Vec<_>>>()?;
        let mut rules = Vec::new();
        for (l, r) in &self.rules {
            let lhs = word(l)?;
            let rhs = terms(r)?;
            if rhs.iter().any(|(w, _)| *w >= lhs) {
                return Err(Error::InvalidParameter(format!(
                    "rule for {l:?} does not decrease the word order"
                )));
            }
            rules.push(Rule { lhs, rhs });
        }
        let mut by_first = vec![Vec::new(); self.names.len()];
        for (k, r) in rules.iter().enumerate() {
            by_first[r.lhs.0[0] as usize].push(k);
        }
        let aliases = self
            .aliases
            .iter()
            .map(|(n, t)| Ok((n.clone(), terms(t)?)))
            .collect::<Result<Vec<_>>>()?;
        let derivations = self
            .derivations
            .iter()
            .map(|(n, g, c)| Ok(DerivationSpec { name: n.clone(), generator: terms(g)?, prefactor: c.clone() }))
            .collect::<Result<Vec<_>>>()?;
        let m = derivations.len();
        let mut structure = vec![vec![vec![Scalar::zero(); m]; m]; m];
        for (a, b, c, f) in self.structure {
            structure[a][b][c] = f.clone();
            structure[b][a][c] = -f;
        }
        let p = Presentation {
            id: self.id,
            names: self.names,
            involution,
            rules,
            by_first,
            hbar: self.hbar,
            aliases,
            derivations,
            structure,
        };
        Ok(Arc::new(p))
    }
}

fn s(n: i64) -> Scalar {
    Scalar::from_int(n)
}

impl Presentation {
    /// Fuzzy sphere: hermitian X < Y < Z with `[X_i, X_j] = iℏ ε_ijk X_k` and
    /// `X² + Y² + Z² = 𝟙`; derivations `∂_i = (1/iℏ)[X_i, ·]`.
    pub fn fuzzy_with(id: &str, hbar: Scalar) -> Arc<Presentation> {
        let ih = &Scalar::i() * &hbar;
        let c = (&Scalar::one() / &ih).clone();
        PresentationBuilder::new(id, hbar)
            .generator("X", "X")
            .generator("Y", "Y")
            .generator("Z", "Z")
            .rule(vec!["Y", "X"], vec![(s(1), vec!["X", "Y"]), (-&ih, vec!["Z"])])
            .rule(vec!["Z", "X"], vec![(s(1), vec!["X", "Z"]), (ih.clone(), vec!["Y"])])
            .rule(vec!["Z", "Y"], vec![(s(1), vec!["Y", "Z"]), (-&ih, vec!["X"])])
            .rule(vec!["Z", "Z"], vec![(s(1), vec![]), (s(-1), vec!["X", "X"]), (s(-1), vec!["Y", "Y"])])
            .derivation("d1", vec![(s(1), vec!["X"])], c.clone())
            .derivation("d2", vec![(s(1), vec!["Y"])], c.clone())
            .derivation("d3", vec![(s(1), vec!["Z"])], c)
            .bracket(0, 1, 2, s(1))
            .bracket(1, 2, 0, s(1))
            .bracket(2, 0, 1, s(1))
            .build()
            .expect("fuzzy presentation is well formed")
    }

    /// Fuzzy sphere with formal ℏ.
    pub fn fuzzy() -> Arc<Presentation> {
        Presentation::fuzzy_with("fuzzy", Scalar::hbar())
    }

    /// Fuzzy sphere at a fixed Gaussian-rational ℏ.
    pub fn fuzzy_at(hbar: &GaussRat) -> Arc<Presentation> {
        Presentation::fuzzy_with(&format!("fuzzy@hbar={hbar}"), Scalar::from_gauss(hbar.clone()))
    }

    /// Weyl algebra in the (U, V) chart: hermitian U < V with `[U, V] = iℏ𝟙`.
    /// Derivations `∂_u = (1/iℏ)[·, V]`, `∂_v = (1/iℏ)[U, ·]`,
    /// `∂ = ½(∂_u − i∂_v)`, `∂̄ = ½(∂_u + i∂_v)`; aliases `L = U + iV`, `Ls = U − iV`.
    pub fn weyl_uv() -> Arc<Presentation> {
        let h = Scalar::hbar();
        let ih = &Scalar::i() * &h;
        let inv_ih = &Scalar::one() / &ih;
        let inv_2h = &Scalar::one() / &(&s(2) * &h);
        let i = Scalar::i();
        PresentationBuilder::new("weyl-uv", h)
            .generator("U", "U")
            .generator("V", "V")
            .rule(vec!["V", "U"], vec![(s(1), vec!["U", "V"]), (-&ih, vec![])])
            .alias("L", vec![(s(1), vec!["U"]), (i.clone(), vec!["V"])])
            .alias("Ls", vec![(s(1), vec!["U"]), (-&i, vec!["V"])])
            .derivation("du", vec![(s(1), vec!["V"])], -&inv_ih)
            .derivation("dv", vec![(s(1), vec!["U"])], inv_ih)
            // ∂ = (1/2ℏ)[·, Λ*] = −(1/2ℏ)[U − iV, ·]
            .derivation("d", vec![(s(1), vec!["U"]), (-&i, vec!["V"])], -&inv_2h)
            // ∂̄ = (1/2ℏ)[Λ, ·]
            .derivation("dbar", vec![(s(1), vec!["U"]), (i, vec!["V"])], inv_2h)
            .build()
            .expect("weyl presentation is well formed")
    }

    /// Weyl algebra in the complex chart: L = Λ < Ls = Λ* with `[Λ, Λ*] = 2ℏ𝟙`.
    /// Normal words are `Λ^a (Λ*)^b`. Aliases `U = (Λ + Λ*)/2`, `V = −(i/2)(Λ − Λ*)`.
    pub fn weyl_lambda() -> Arc<Presentation> {
        let h = Scalar::hbar();
        let inv_2h = &Scalar::one() / &(&s(2) * &h);
        let half = Scalar::from_ratio(1, 2);
        let half_i = &Scalar::i() * &half;
        let inv_ih = &Scalar::one() / &(&Scalar::i() * &h);
        PresentationBuilder::new("weyl-lambda", h.clone())
            .generator("L", "Ls")
            .generator("Ls", "L")
            .rule(vec!["Ls", "L"], vec![(s(1), vec!["L", "Ls"]), (&s(-2) * &h, vec![])])
            .alias("U", vec![(half.clone(), vec!["L"]), (half, vec!["Ls"])])
            .alias("V", vec![(-&half_i, vec!["L"]), (half_i.clone(), vec!["Ls"])])
            // ∂_u = (1/iℏ)[·, V] = −(1/iℏ)[V, ·]
            .derivation("du", vec![(-&half_i, vec!["L"]), (half_i.clone(), vec!["Ls"])], -&inv_ih)
            // ∂_v = (1/iℏ)[U, ·]
            .derivation(
                "dv",
                vec![(Scalar::from_ratio(1, 2), vec!["L"]), (Scalar::from_ratio(1, 2), vec!["Ls"])],
                inv_ih,
            )
            .derivation("d", vec![(s(1), vec!["Ls"])], -&inv_2h)
            .derivation("dbar", vec![(s(1), vec!["L"])], inv_2h)
            .build()
            .expect("weyl presentation is well formed")
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn hbar(&self) -> &Scalar {
        &self.hbar
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn num_generators(&self) -> usize {
        self.names.len()
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn involution_table(&self) -> &[u8] {
        &self.involution
    }

    pub fn generator_index(&self, name: &str) -> Option<u8> {
        self.names.iter().position(|n| n == name).map(|k| k as u8)
    }

    pub fn alias(&self, name: &str) -> Option<&[(Word, Scalar)]> {
        self.aliases.iter().find(|(n, _)| n == name).map(|(_, t)| t.as_slice())
    }

    pub fn derivation_specs(&self) -> &[DerivationSpec] {
        &self.derivations
    }

    /// Structure constants `f_ab^c` of the registered derivations.
    pub fn structure_constants(&self) -> &[Vec<Vec<Scalar>>] {
        &self.structure
    }

    fn find_redex(&self, w: &Word) -> Option<(usize, usize)> {
        for i in 0..w.0.len() {
            for &k in &self.by_first[w.0[i] as usize] {
                if w.0[i..].starts_with(&self.rules[k].lhs.0) {
                    return Some((i, k));
                }
            }
        }
        None
    }

    fn all_redexes(&self, w: &Word) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..w.0.len() {
            for &k in &self.by_first[w.0[i] as usize] {
                if w.0[i..].starts_with(&self.rules[k].lhs.0) {
                    out.push((i, k));
                }
            }
        }
        out
    }

    fn splice(&self, w: &Word, pos: usize, k: usize, rw: &Word) -> Word {
        let l = self.rules[k].lhs.0.len();
        let mut v = Vec::with_capacity(w.0.len() - l + rw.0.len());
        v.extend_from_slice(&w.0[..pos]);
        v.extend_from_slice(&rw.0);
        v.extend_from_slice(&w.0[pos + l..]);
        Word(v)
    }

    pub fn is_normal(&self, w: &Word) -> bool {
        self.find_redex(w).is_none()
    }

    /// Reduces a raw sum to normal form by always rewriting the largest
    /// pending word at its leftmost redex.
    pub fn reduce<I: IntoIterator<Item = (Word, Scalar)>>(&self, raw: I) -> BTreeMap<Word, Scalar> {
        let mut pending: BTreeMap<Word, Scalar> = BTreeMap::new();
        for (w, c) in raw {
            accumulate(&mut pending, w, &c);
        }
        let mut out = BTreeMap::new();
        while let Some((w, c)) = pending.pop_last() {
            if c.is_zero() {
                continue;
            }
            match self.find_redex(&w) {
                Some((pos, k)) => {
                    for (rw, rc) in &self.rules[k].rhs {
                        accumulate(&mut pending, self.splice(&w, pos, k, rw), &(&c * rc));
                    }
                }
                None => {
                    out.insert(w, c);
                }
            }
        }
        out
    }

    /// Reduction with randomized choice of pending word and redex; used to
    /// witness confluence empirically.
    pub fn reduce_randomized<I, R>(&self, raw: I, rng: &mut R) -> BTreeMap<Word, Scalar>
    where
        I: IntoIterator<Item = (Word, Scalar)>,
        R: Rng + ?Sized,
    {
        let mut pending: Vec<(Word, Scalar)> = raw.into_iter().collect();
        let mut out: BTreeMap<Word, Scalar> = BTreeMap::new();
        while !pending.is_empty() {
            let idx = rng.random_range(0..pending.len());
            let (w, c) = pending.swap_remove(idx);
            if c.is_zero() {
                continue;
            }
            let redexes = self.all_redexes(&w);
            if redexes.is_empty() {
                accumulate(&mut out, w, &c);
                continue;
            }
            let (pos, k) = redexes[rng.random_range(0..redexes.len())];
            for (rw, rc) in &self.rules[k].rhs {
                pending.push((self.splice(&w, pos, k, rw), &c * rc));
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    /// Checks that the involution respects every defining relation:
    /// `(lhs)* − (rhs)*` must reduce to zero.
    pub fn check_involution(self: &Arc<Self>) -> bool {
        self.rules.iter().all(|r| {
            let lhs = AlgebraElement::from_terms(self, [(r.lhs.clone(), Scalar::one())]);
            let rhs = AlgebraElement::from_terms(self, r.rhs.iter().cloned());
            (&lhs.star() - &rhs.star()).is_zero()
        })
    }

    /// Checks that every rule strictly decreases the graded-lexicographic order.
    pub fn check_order(&self) -> bool {
        self.rules.iter().all(|r| r.rhs.iter().all(|(w, _)| *w < r.lhs))
    }

    pub fn word_text(&self, w: &Word) -> String {
        let mut parts: Vec<String> = Vec::new();
        let mut i = 0;
        while i < w.0.len() {
            let g = w.0[i];
            let mut j = i;
            while j < w.0.len() && w.0[j] == g {
                j += 1;
            }
            let name = &self.names[g as usize];
            parts.push(if j - i == 1 { name.clone() } else { format!("{name}^{}", j - i) });
            i = j;
        }
        parts.join("*")
    }
}

fn accumulate(map: &mut BTreeMap<Word, Scalar>, w: Word, c: &Scalar) {
    if c.is_zero() {
        return;
    }
    match map.get_mut(&w) {
        Some(v) => {
            *v = &*v + c;
            if v.is_zero() {
                map.remove(&w);
            }
        }
        None => {
            map.insert(w, c.clone());
        }
    }
}

/// A finite sum of scalar-weighted normal words.
#[derive(Clone)]
pub struct AlgebraElement {
    pres: Arc<Presentation>,
    terms: BTreeMap<Word, Scalar>,
}

impl fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}", self.pres.id, self)
    }
}

impl PartialEq for AlgebraElement {
    fn eq(&self, o: &Self) -> bool {
        self.same_presentation(o) && self.terms == o.terms
    }
}

impl Eq for AlgebraElement {}

impl std::hash::Hash for AlgebraElement {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.pres.id.hash(state);
        self.terms.hash(state);
    }
}

impl AlgebraElement {
    pub fn zero(p: &Arc<Presentation>) -> Self {
        AlgebraElement { pres: p.clone(), terms: BTreeMap::new() }
    }

    pub fn one(p: &Arc<Presentation>) -> Self {
        AlgebraElement::scalar(p, Scalar::one())
    }

    pub fn scalar(p: &Arc<Presentation>, c: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Word::unit(), c);
        }
        AlgebraElement { pres: p.clone(), terms }
    }

    pub fn gauss(p: &Arc<Presentation>, c: GaussRat) -> Self {
        AlgebraElement::scalar(p, Scalar::from_gauss(c))
    }

    /// `ℏ·𝟙` for the presentation's ℏ.
    pub fn hbar(p: &Arc<Presentation>) -> Self {
        AlgebraElement::scalar(p, p.hbar.clone())
    }

    /// A generator or alias by name.
    pub fn generator(p: &Arc<Presentation>, name: &str) -> Result<Self> {
        if let Some(k) = p.generator_index(name) {
            return Ok(AlgebraElement::from_terms(p, [(Word(vec![k]), Scalar::one())]));
        }
        p.alias(name)
            .map(|t| AlgebraElement::from_terms(p, t.iter().cloned()))
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    /// Normal form of a raw sum of scalar-weighted words.
    pub fn from_terms<I: IntoIterator<Item = (Word, Scalar)>>(p: &Arc<Presentation>, raw: I) -> Self {
        AlgebraElement { pres: p.clone(), terms: p.reduce(raw) }
    }

    pub fn presentation(&self) -> &Arc<Presentation> {
        &self.pres
    }

    pub fn terms(&self) -> &BTreeMap<Word, Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Total degree of the highest word (`None` for zero).
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().next_back().map(Word::len)
    }

    /// The scalar value if the element is a multiple of 𝟙.
    pub fn as_scalar(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero()),
            1 => self.terms.get(&Word::unit()).cloned(),
            _ => None,
        }
    }

    pub fn coefficient(&self, w: &Word) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    pub fn same_presentation(&self, o: &Self) -> bool {
        Arc::ptr_eq(&self.pres, &o.pres) || self.pres.id == o.pres.id
    }

    fn check_same(&self, o: &Self) -> Result<()> {
        if self.same_presentation(o) {
            Ok(())
        } else {
            Err(Error::PresentationMismatch { left: self.pres.id.clone(), right: o.pres.id.clone() })
        }
    }

    pub fn try_add(&self, o: &Self) -> Result<Self> {
        self.check_same(o)?;
        let mut terms = self.terms.clone();
        for (w, c) in &o.terms {
            accumulate(&mut terms, w.clone(), c);
        }
        Ok(AlgebraElement { pres: self.pres.clone(), terms })
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self> {
        self.check_same(o)?;
        if self.is_zero() || o.is_zero() {
            return Ok(AlgebraElement::zero(&self.pres));
        }
        if let Some(c) = self.as_scalar() {
            return Ok(o.scale(&c));
        }
        if let Some(c) = o.as_scalar() {
            return Ok(self.scale(&c));
        }
        let raw = self
            .terms
            .iter()
            .flat_map(|(u, a)| o.terms.iter().map(move |(v, b)| (u.concat(v), a * b)));
        Ok(AlgebraElement::from_terms(&self.pres, raw))
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return AlgebraElement::zero(&self.pres);
        }
        let terms = self.terms.iter().map(|(w, a)| (w.clone(), a * c)).collect();
        AlgebraElement { pres: self.pres.clone(), terms }
    }

    pub fn scale_gauss(&self, c: &GaussRat) -> Self {
        if c.is_zero() {
            return AlgebraElement::zero(&self.pres);
        }
        let terms = self.terms.iter().map(|(w, a)| (w.clone(), a.scale(c))).collect();
        AlgebraElement { pres: self.pres.clone(), terms }
    }

    /// The involution: antilinear, antimultiplicative, generators mapped by the table.
    pub fn star(&self) -> Self {
        let inv = &self.pres.involution;
        let raw = self.terms.iter().map(|(w, c)| {
            let rev: Vec<u8> = w.0.iter().rev().map(|&g| inv[g as usize]).collect();
            (Word(rev), c.conj())
        });
        AlgebraElement::from_terms(&self.pres, raw)
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(AlgebraElement::one(&self.pres), |acc, _| &acc * self)
    }

    /// `[self, o] = self·o − o·self`.
    pub fn commutator(&self, o: &Self) -> Self {
        &(self * o) - &(o * self)
    }

    /// Image under the algebra homomorphism sending generator `k` to `images[k]`.
    /// Scalars are carried over unchanged, so the target must share the scalar field.
    pub fn map_generators(&self, images: &[AlgebraElement]) -> Result<Self> {
        let target = images
            .first()
            .map(|e| e.pres.clone())
            .ok_or_else(|| Error::InvalidParameter("empty image list".into()))?;
        if images.len() != self.pres.num_generators() {
            return Err(Error::DimensionMismatch { expected: self.pres.num_generators(), found: images.len() });
        }
        let mut acc = AlgebraElement::zero(&target);
        for (w, c) in &self.terms {
            let mut t = AlgebraElement::scalar(&target, c.clone());
            for &g in &w.0 {
                t = t.try_mul(&images[g as usize])?;
            }
            acc = acc.try_add(&t)?;
        }
        Ok(acc)
    }

    /// Replaces the formal ℏ of every coefficient by `value`, landing in `target`
    /// (which must have the same alphabet and rules up to the value of ℏ).
    pub fn specialize(&self, target: &Arc<Presentation>, value: &GaussRat) -> Result<Self> {
        if target.names != self.pres.names {
            return Err(Error::PresentationMismatch { left: self.pres.id.clone(), right: target.id.clone() });
        }
        let mut raw = Vec::with_capacity(self.terms.len());
        for (w, c) in &self.terms {
            let v = c
                .eval_exact(value)
                .ok_or_else(|| Error::InvalidParameter(format!("coefficient {c} has a pole at hbar = {value}")))?;
            raw.push((w.clone(), Scalar::from_gauss(v)));
        }
        Ok(AlgebraElement::from_terms(target, raw))
    }

    /// Canonical text: words ascending in graded-lex order, each ℏ-power of a
    /// polynomial coefficient as its own term, e.g. `(3/2 + 1/2*i)*hbar^2 * X*Y*Z`.
    pub fn to_text(&self) -> String {
        let mut parts: Vec<(bool, String)> = Vec::new();
        for (w, c) in &self.terms {
            let word = self.pres.word_text(w);
            if !c.is_polynomial() {
                let body = if word.is_empty() { format!("{c}") } else { format!("{c} * {word}") };
                parts.push((false, body));
                continue;
            }
            for (k, a) in c.numer().coeffs().iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                let (neg, mag) = split_sign(a);
                let mut scal: Vec<String> = Vec::new();
                if !mag.is_one() || (k == 0 && word.is_empty()) {
                    scal.push(mag.to_string());
                }
                match k {
                    0 => {}
                    1 => scal.push("hbar".into()),
                    _ => scal.push(format!("hbar^{k}")),
                }
                let body = match (scal.is_empty(), word.is_empty()) {
                    (true, _) => word.clone(),
                    (false, true) => scal.join("*"),
                    (false, false) => format!("{} * {}", scal.join("*"), word),
                };
                parts.push((neg, body));
            }
        }
        join_signed(&parts)
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl Add for &AlgebraElement {
    type Output = AlgebraElement;
    /// Panics on presentation mismatch; see [`AlgebraElement::try_add`].
    fn add(self, o: &AlgebraElement) -> AlgebraElement {
        self.try_add(o).expect("presentation mismatch")
    }
}

impl Neg for &AlgebraElement {
    type Output = AlgebraElement;
    fn neg(self) -> AlgebraElement {
        let terms = self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect();
        AlgebraElement { pres: self.pres.clone(), terms }
    }
}

impl Sub for &AlgebraElement {
    type Output = AlgebraElement;
    fn sub(self, o: &AlgebraElement) -> AlgebraElement {
        self + &(-o)
    }
}

impl Mul for &AlgebraElement {
    type Output = AlgebraElement;
    /// Panics on presentation mismatch; see [`AlgebraElement::try_mul`].
    fn mul(self, o: &AlgebraElement) -> AlgebraElement {
        self.try_mul(o).expect("presentation mismatch")
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for AlgebraElement {
            type Output = AlgebraElement;
            fn $m(self, o: AlgebraElement) -> AlgebraElement { (&self).$m(&o) }
        }
        impl $tr<&AlgebraElement> for AlgebraElement {
            type Output = AlgebraElement;
            fn $m(self, o: &AlgebraElement) -> AlgebraElement { (&self).$m(o) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl Neg for AlgebraElement {
    type Output = AlgebraElement;
    fn neg(self) -> AlgebraElement {
        -&self
    }
}

/// Inner derivation `δ(f) = c·[g, f]`.
#[derive(Clone, Debug)]
pub struct Derivation {
    pub name: String,
    pub generator: AlgebraElement,
    pub prefactor: Scalar,
}

impl Derivation {
    pub fn new(name: impl Into<String>, generator: AlgebraElement, prefactor: Scalar) -> Self {
        Derivation { name: name.into(), generator, prefactor }
    }

    /// A derivation registered in the presentation.
    pub fn named(p: &Arc<Presentation>, name: &str) -> Result<Self> {
        let spec = p
            .derivations
            .iter()
            .find(|d| d.name == name)
            .ok_or_else(|| Error::UnknownDerivation(name.to_string()))?;
        Ok(Derivation::from_spec(p, spec))
    }

    fn from_spec(p: &Arc<Presentation>, spec: &DerivationSpec) -> Self {
        Derivation {
            name: spec.name.clone(),
            generator: AlgebraElement::from_terms(p, spec.generator.iter().cloned()),
            prefactor: spec.prefactor.clone(),
        }
    }

    /// All derivations registered in the presentation, in registration order.
    pub fn all(p: &Arc<Presentation>) -> Vec<Derivation> {
        p.derivations.iter().map(|s| Derivation::from_spec(p, s)).collect()
    }

    pub fn apply(&self, f: &AlgebraElement) -> AlgebraElement {
        if f.as_scalar().is_some() {
            return AlgebraElement::zero(f.presentation());
        }
        self.generator.commutator(f).scale(&self.prefactor)
    }

    /// The adjoint derivation `δ*(f) = (δ(f*))* = −c̄·[g*, f]`.
    pub fn adjoint(&self) -> Derivation {
        Derivation {
            name: format!("{}*", self.name),
            generator: self.generator.star(),
            prefactor: -&self.prefactor.conj(),
        }
    }

    /// `δ* = δ`, decided on the generators of the presentation.
    pub fn is_hermitian(&self) -> bool {
        let p = self.generator.presentation();
        let adj = self.adjoint();
        (0..p.num_generators()).all(|k| {
            let g = AlgebraElement::from_terms(p, [(Word(vec![k as u8]), Scalar::one())]);
            self.apply(&g) == adj.apply(&g)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gen(p: &Arc<Presentation>, n: &str) -> AlgebraElement {
        AlgebraElement::generator(p, n).unwrap()
    }

    fn hb(p: &Arc<Presentation>, c: i64) -> AlgebraElement {
        AlgebraElement::scalar(p, &Scalar::from_int(c) * p.hbar())
    }

    #[test]
    fn weyl_uv_reorders() {
        let p = Presentation::weyl_uv();
        let (u, v) = (gen(&p, "U"), gen(&p, "V"));
        let ih = hb(&p, 1).scale(&Scalar::i());
        assert_eq!(&v * &u, &(&u * &v) - &ih);
        assert_eq!((&u * &v) - (&v * &u), ih);
    }

    #[test]
    fn lambda_triple_product() {
        let p = Presentation::weyl_lambda();
        let (l, ls) = (gen(&p, "L"), gen(&p, "Ls"));
        let lhs = &(&l * &ls) * &l;
        let rhs = &(&(&l * &l) * &ls) - &(&hb(&p, 2) * &l);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn lambda_sum_difference_product() {
        let p = Presentation::weyl_lambda();
        let (l, ls) = (gen(&p, "L"), gen(&p, "Ls"));
        let lhs = &(&l + &ls) * &(&l - &ls);
        let rhs = &(&(&l * &l) - &(&ls * &ls)) - &hb(&p, 2);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn fuzzy_casimir_and_commutators() {
        let p = Presentation::fuzzy();
        let (x, y, z) = (gen(&p, "X"), gen(&p, "Y"), gen(&p, "Z"));
        let cas = &(&(&x * &x) + &(&y * &y)) + &(&z * &z);
        assert_eq!(cas, AlgebraElement::one(&p));
        let ih = hb(&p, 1).scale(&Scalar::i());
        assert_eq!(&z * &x, &(&x * &z) + &(&ih * &y));
        let zz = &z * &z;
        assert_eq!(&z * &zz, &zz * &z);
        let expect = &(&z - &(&(&x * &x) * &z)) - &(&(&y * &y) * &z);
        assert_eq!(&z * &zz, expect);
    }

    #[test]
    fn unit_and_zero_products() {
        let p = Presentation::fuzzy();
        let x = gen(&p, "X");
        assert_eq!(&AlgebraElement::one(&p) * &x, x);
        assert!((&x * &AlgebraElement::zero(&p)).is_zero());
    }

    #[test]
    fn involution_examples() {
        let p = Presentation::weyl_uv();
        let (u, v) = (gen(&p, "U"), gen(&p, "V"));
        let ih = hb(&p, 1).scale(&Scalar::i());
        assert_eq!((&u * &v).star(), &(&u * &v) - &ih);
        let f = Presentation::fuzzy();
        let x = gen(&f, "X");
        let t = (&hb(&f, 1) * &x).scale(&Scalar::i());
        assert_eq!(t.star(), -&t);
        let w = Presentation::weyl_lambda();
        let (l, ls) = (gen(&w, "L"), gen(&w, "Ls"));
        assert_eq!(l.star(), ls);
        assert_eq!((&l * &l).star(), &ls * &ls);
    }

    #[test]
    fn presentations_are_consistent() {
        for p in [Presentation::fuzzy(), Presentation::weyl_uv(), Presentation::weyl_lambda()] {
            assert!(p.check_order());
            assert!(p.check_involution(), "{}", p.id());
        }
    }

    #[test]
    fn derivation_examples() {
        let p = Presentation::fuzzy();
        let d1 = Derivation::named(&p, "d1").unwrap();
        assert_eq!(d1.apply(&gen(&p, "Y")), gen(&p, "Z"));
        assert!(d1.apply(&AlgebraElement::one(&p)).is_zero());
        let w = Presentation::weyl_lambda();
        let d = Derivation::named(&w, "d").unwrap();
        let (l, ls) = (gen(&w, "L"), gen(&w, "Ls"));
        assert!(d.apply(&ls).is_zero());
        assert_eq!(d.apply(&l), AlgebraElement::one(&w));
        assert_eq!(d.apply(&(&l * &l)), l.scale(&Scalar::from_int(2)));
        let dbar = Derivation::named(&w, "dbar").unwrap();
        assert_eq!(dbar.apply(&ls), AlgebraElement::one(&w));
        assert!(dbar.apply(&l).is_zero());
    }

    #[test]
    fn complex_derivations_match_real_ones() {
        let w = Presentation::weyl_lambda();
        let all = Derivation::all(&w);
        let x = &(&gen(&w, "L") * &gen(&w, "Ls")) + &gen(&w, "Ls").pow(3);
        let half = Scalar::from_ratio(1, 2);
        let du = all[0].apply(&x);
        let dv = all[1].apply(&x).scale(&Scalar::i());
        assert_eq!(all[2].apply(&x), (&du - &dv).scale(&half));
        assert_eq!(all[3].apply(&x), (&du + &dv).scale(&half));
        assert!(all[0].is_hermitian() && all[1].is_hermitian());
        assert_eq!(all[2].adjoint().apply(&x), all[3].apply(&x));
        let u = AlgebraElement::generator(&w, "U").unwrap();
        let v = AlgebraElement::generator(&w, "V").unwrap();
        assert_eq!(all[0].apply(&u), AlgebraElement::one(&w));
        assert_eq!(all[1].apply(&v), AlgebraElement::one(&w));
        assert!(all[0].apply(&v).is_zero() && all[1].apply(&u).is_zero());
    }

    #[test]
    fn canonical_text() {
        let p = Presentation::fuzzy();
        let xyz = &(&gen(&p, "X") * &gen(&p, "Y")) * &gen(&p, "Z");
        let c = Scalar::from_gauss(GaussRat::new(
            num_rational::BigRational::new(3.into(), 2.into()),
            num_rational::BigRational::new(1.into(), 2.into()),
        ));
        let t = xyz.scale(&(&c * &(p.hbar() * p.hbar())));
        assert_eq!(t.to_text(), "(3/2 + 1/2*i)*hbar^2 * X*Y*Z");
        assert_eq!(AlgebraElement::zero(&p).to_text(), "0");
        let w = Presentation::weyl_lambda();
        let e = &gen(&w, "Ls") * &gen(&w, "L");
        assert_eq!(e.to_text(), "-2*hbar + L*Ls");
    }
}
