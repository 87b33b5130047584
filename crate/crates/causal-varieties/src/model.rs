//! Boolean functions of latent bits, functional causal structures, the
//! purification and switch-composition constructions, and the symmetry
//! group action on models and distributions.

use std::fmt;

use crate::error::{Error, Result};

/// Hard cap on latent bits; truth tables are stored in a u32.
pub const MAX_LATENTS: usize = 5;

pub const DEFAULT_LATENT_NAMES: [&str; MAX_LATENTS] = ["u", "v", "w", "d", "r"];

/// Boolean function of `n` latent bits, kept as both a truth table and its
/// algebraic normal form. Assignment index packs latent j into bit j.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct BoolFunc {
    n: u8,
    table: u32,
    anf: u32,
}

impl BoolFunc {
    pub fn from_table(n: usize, table: u32) -> Result<BoolFunc> {
        if n > MAX_LATENTS {
            return Err(Error::Invalid(format!("latent count {n} exceeds {MAX_LATENTS}")));
        }
        let size = 1u32 << n;
        if size < 32 && table >> size != 0 {
            return Err(Error::Invalid("truth table has bits beyond 2^n".into()));
        }
        Ok(BoolFunc { n: n as u8, table, anf: mobius(n, table) })
    }

    /// Builds from a truth-table bit vector (index = assignment).
    pub fn from_bits(bits: &[bool]) -> Result<BoolFunc> {
        if !bits.len().is_power_of_two() {
            return Err(Error::Invalid(format!(
                "truth table length {} is not a power of two",
                bits.len()
            )));
        }
        let n = bits.len().trailing_zeros() as usize;
        let mut table = 0u32;
        for (i, &b) in bits.iter().enumerate() {
            if b {
                table |= 1 << i;
            }
        }
        BoolFunc::from_table(n, table)
    }

    pub fn constant(n: usize, value: bool) -> BoolFunc {
        let size = 1u64 << n;
        let table = if value { (u32::MAX as u64 >> (32 - size)) as u32 } else { 0 };
        BoolFunc::from_table(n, table).expect("constant fits")
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn table(&self) -> u32 {
        self.table
    }

    /// ANF coefficient bitset: bit `m` set means the monomial with latent
    /// set `m` occurs (coefficient 1 over GF(2)).
    pub fn anf(&self) -> u32 {
        self.anf
    }

    pub fn eval(&self, assignment: u32) -> bool {
        (self.table >> assignment) & 1 == 1
    }

    /// Evaluation through the ANF; must agree with the table.
    pub fn eval_anf(&self, assignment: u32) -> bool {
        let mut acc = false;
        let mut rest = self.anf;
        while rest != 0 {
            let m = rest & rest.wrapping_neg();
            let mask = m.trailing_zeros();
            if mask & !assignment == 0 {
                acc = !acc;
            }
            rest ^= m;
        }
        acc
    }

    pub fn xor(&self, other: &BoolFunc) -> BoolFunc {
        debug_assert_eq!(self.n, other.n);
        BoolFunc::from_table(self.n(), self.table ^ other.table).expect("same size")
    }

    pub fn not(&self) -> BoolFunc {
        let size = 1u64 << self.n;
        let mask = (u32::MAX as u64 >> (32 - size)) as u32;
        BoolFunc::from_table(self.n(), self.table ^ mask).expect("same size")
    }

    /// Relabels latents: new latent j plays the role of old latent perm[j].
    pub fn permute_latents(&self, perm: &[usize]) -> BoolFunc {
        let n = self.n();
        debug_assert_eq!(perm.len(), n);
        let mut table = 0u32;
        for i in 0..(1u32 << n) {
            let mut old = 0u32;
            for j in 0..n {
                if (i >> j) & 1 == 1 {
                    old |= 1 << perm[j];
                }
            }
            if self.eval(old) {
                table |= 1 << i;
            }
        }
        BoolFunc::from_table(n, table).expect("same size")
    }

    /// Extends to `n + extra` latents, ignoring the new ones.
    pub fn extend(&self, extra: usize) -> BoolFunc {
        let n = self.n();
        let mut table = 0u32;
        for i in 0..(1u32 << (n + extra)) {
            if self.eval(i & ((1 << n) - 1)) {
                table |= 1 << i;
            }
        }
        BoolFunc::from_table(n + extra, table).expect("fits")
    }
}

/// Binary Moebius (Zhegalkin) transform; an involution on coefficient vectors.
pub fn mobius(n: usize, table: u32) -> u32 {
    let mut t = table;
    for j in 0..n {
        let bit = 1u32 << j;
        for i in 0..(1u32 << n) {
            if i & bit != 0 {
                let lower = (t >> (i ^ bit)) & 1;
                t ^= lower << i;
            }
        }
    }
    t
}

/// ANF from a truth table given as bits; the operation behind Eq-style
/// coefficient presentations of functional dependences.
pub fn anf_from_truth_table(bits: &[bool]) -> Result<BoolFunc> {
    BoolFunc::from_bits(bits)
}

/// A purely common-cause functional causal structure: the pair (f_A, f_B)
/// over a shared set of latent bits.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CausalModel {
    n: u8,
    f_a: BoolFunc,
    f_b: BoolFunc,
    latent_names: Vec<String>,
}

impl CausalModel {
    pub fn new(f_a: BoolFunc, f_b: BoolFunc) -> Result<CausalModel> {
        if f_a.n() != f_b.n() {
            return Err(Error::DimensionMismatch { expected: f_a.n(), got: f_b.n() });
        }
        let n = f_a.n();
        Ok(CausalModel {
            n: n as u8,
            f_a,
            f_b,
            latent_names: DEFAULT_LATENT_NAMES[..n].iter().map(|s| s.to_string()).collect(),
        })
    }

    pub fn with_latent_names(mut self, names: Vec<String>) -> Result<CausalModel> {
        if names.len() != self.n() {
            return Err(Error::DimensionMismatch { expected: self.n(), got: names.len() });
        }
        self.latent_names = names;
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn f_a(&self) -> &BoolFunc {
        &self.f_a
    }

    pub fn f_b(&self) -> &BoolFunc {
        &self.f_b
    }

    pub fn latent_names(&self) -> &[String] {
        &self.latent_names
    }

    /// Outcome index 2a + b for a latent assignment.
    pub fn outcome(&self, assignment: u32) -> usize {
        ((self.f_a.eval(assignment) as usize) << 1) | self.f_b.eval(assignment) as usize
    }

    /// Truth-table pair packed for ordering and deduplication.
    pub fn key(&self) -> u64 {
        ((self.f_a.table() as u64) << 32) | self.f_b.table() as u64
    }

    /// Minimum of `key` over all latent permutations; idempotent and
    /// invariant under latent permutation of the input (the dedup key).
    pub fn canonical_form(&self) -> CausalModel {
        let n = self.n();
        let mut best: Option<CausalModel> = None;
        let mut perm: Vec<usize> = (0..n).collect();
        permute_all(&mut perm, 0, &mut |perm| {
            let cand = CausalModel::new(
                self.f_a.permute_latents(perm),
                self.f_b.permute_latents(perm),
            )
            .expect("same n");
            if best.as_ref().map_or(true, |b| cand.key() < b.key()) {
                best = Some(cand);
            }
        });
        best.expect("at least the identity permutation")
    }

    /// Extends with unused latents; distribution set is unchanged.
    pub fn extend(&self, extra: usize) -> Result<CausalModel> {
        if self.n() + extra > MAX_LATENTS {
            return Err(Error::Invalid("latent count above cap".into()));
        }
        CausalModel::new(self.f_a.extend(extra), self.f_b.extend(extra))
    }
}

fn permute_all(perm: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == perm.len() {
        f(perm);
        return;
    }
    for i in k..perm.len() {
        perm.swap(k, i);
        permute_all(perm, k + 1, f);
        perm.swap(k, i);
    }
}

/// A model with a directed edge B -> A: B = f_B(latents), A = g(latents, B)
/// with B wired to input bit `n`.
#[derive(Clone, Debug)]
pub struct DirectedModel {
    pub f_b: BoolFunc,
    /// Function of n latents plus B as the extra highest input bit.
    pub g_a: BoolFunc,
}

impl DirectedModel {
    pub fn new(f_b: BoolFunc, g_a: BoolFunc) -> Result<DirectedModel> {
        if g_a.n() != f_b.n() + 1 {
            return Err(Error::DimensionMismatch { expected: f_b.n() + 1, got: g_a.n() });
        }
        Ok(DirectedModel { f_b, g_a })
    }
}

/// Lemma-1 purification: substitute B's function into A, yielding the purely
/// common-cause model with the same induced map from latents to (A, B).
pub fn purify(dm: &DirectedModel) -> CausalModel {
    let n = dm.f_b.n();
    let mut table = 0u32;
    for i in 0..(1u32 << n) {
        let b = dm.f_b.eval(i);
        let input = i | ((b as u32) << n);
        if dm.g_a.eval(input) {
            table |= 1 << i;
        }
    }
    let g_prime = BoolFunc::from_table(n, table).expect("fits");
    CausalModel::new(g_prime, dm.f_b).expect("same n")
}

/// Theorem-2 switch composition: a fresh latent (the highest bit) selects
/// m0 at 0 and m1 at 1.
pub fn compose_switch(m0: &CausalModel, m1: &CausalModel) -> Result<CausalModel> {
    if m0.n() != m1.n() {
        return Err(Error::DimensionMismatch { expected: m0.n(), got: m1.n() });
    }
    let n = m0.n();
    if n + 1 > MAX_LATENTS {
        return Err(Error::Invalid("latent count above cap".into()));
    }
    let compose = |f0: &BoolFunc, f1: &BoolFunc| {
        let mut table = 0u32;
        for i in 0..(1u32 << n) {
            if f0.eval(i) {
                table |= 1 << i;
            }
            if f1.eval(i) {
                table |= 1 << (i | (1 << n));
            }
        }
        BoolFunc::from_table(n + 1, table).expect("fits")
    };
    CausalModel::new(compose(&m0.f_a, &m1.f_a), compose(&m0.f_b, &m1.f_b))
}

/// Restriction of the switch composition back to one side.
pub fn restrict_switch(m: &CausalModel, high_bit_value: bool) -> Result<CausalModel> {
    if m.n() == 0 {
        return Err(Error::Invalid("no latent to restrict".into()));
    }
    let n = m.n() - 1;
    let restrict = |f: &BoolFunc| {
        let mut table = 0u32;
        for i in 0..(1u32 << n) {
            let idx = i | ((high_bit_value as u32) << n);
            if f.eval(idx) {
                table |= 1 << i;
            }
        }
        BoolFunc::from_table(n, table).expect("fits")
    };
    CausalModel::new(restrict(&m.f_a), restrict(&m.f_b))
}

// ---------------------------------------------------------------------------
// Symmetries
// ---------------------------------------------------------------------------

/// The five generators of the tetrahedron symmetry action used in the
/// catalogue: identity, bit flips, swap, and "add B to A".
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Gen {
    Id,
    FlipA,
    FlipB,
    Swap,
    AddBToA,
}

impl Gen {
    /// Index map sigma on outcomes 2a+b: the transformed distribution reads
    /// new[i] = old[sigma(i)]. All five generators are involutions.
    fn index_map(&self) -> [usize; 4] {
        match self {
            Gen::Id => [0, 1, 2, 3],
            Gen::FlipA => [2, 3, 0, 1],   // p_ab <- p_{a+1,b}
            Gen::FlipB => [1, 0, 3, 2],   // p_ab <- p_{a,b+1}
            Gen::Swap => [0, 2, 1, 3],    // p_ab <- p_ba
            Gen::AddBToA => [0, 3, 2, 1], // p_ab <- p_{a+b,b}
        }
    }

    fn apply_model(&self, m: &CausalModel) -> CausalModel {
        let out = match self {
            Gen::Id => (m.f_a, m.f_b),
            Gen::FlipA => (m.f_a.not(), m.f_b),
            Gen::FlipB => (m.f_a, m.f_b.not()),
            Gen::Swap => (m.f_b, m.f_a),
            Gen::AddBToA => (m.f_a.xor(&m.f_b), m.f_b),
        };
        CausalModel::new(out.0, out.1)
            .expect("same n")
            .with_latent_names(m.latent_names.clone())
            .expect("same n")
    }

    pub fn token(&self) -> &'static str {
        match self {
            Gen::Id => "Id",
            Gen::FlipA => "fA",
            Gen::FlipB => "fB",
            Gen::Swap => "S",
            Gen::AddBToA => "X",
        }
    }
}

/// A word over the generators, composed right-to-left (the rightmost
/// generator acts first), matching the composition convention of the table.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SymmetryElem {
    word: Vec<Gen>,
}

impl SymmetryElem {
    pub fn identity() -> SymmetryElem {
        SymmetryElem { word: vec![] }
    }

    pub fn from_word(word: Vec<Gen>) -> SymmetryElem {
        SymmetryElem { word }
    }

    pub fn word(&self) -> &[Gen] {
        &self.word
    }

    /// Parses words like `fAB S X` or `fA X S fB`; `fAB` expands to the
    /// commuting pair of flips. Tokens may be space-separated or glued.
    pub fn parse(input: &str) -> Result<SymmetryElem> {
        let mut word = Vec::new();
        let mut rest = input.trim();
        while !rest.is_empty() {
            if let Some(r) = rest.strip_prefix(char::is_whitespace) {
                rest = r.trim_start();
                continue;
            }
            let taken = if let Some(r) = rest.strip_prefix("Id") {
                word.push(Gen::Id);
                r
            } else if let Some(r) = rest.strip_prefix("fAB") {
                word.push(Gen::FlipA);
                word.push(Gen::FlipB);
                r
            } else if let Some(r) = rest.strip_prefix("fA") {
                word.push(Gen::FlipA);
                r
            } else if let Some(r) = rest.strip_prefix("fB") {
                word.push(Gen::FlipB);
                r
            } else if let Some(r) = rest.strip_prefix('S') {
                word.push(Gen::Swap);
                r
            } else if let Some(r) = rest.strip_prefix('X') {
                word.push(Gen::AddBToA);
                r
            } else {
                return Err(Error::Parse(format!(
                    "bad symmetry word `{input}` (unreadable at `{rest}`)"
                )));
            };
            rest = taken;
        }
        Ok(SymmetryElem { word })
    }

    /// Action on functional dependences, rightmost generator first.
    pub fn apply_model(&self, m: &CausalModel) -> CausalModel {
        let mut out = m.clone();
        for g in self.word.iter().rev() {
            out = g.apply_model(&out);
        }
        out
    }

    /// Index permutation of the composite action on distributions.
    pub fn index_map(&self) -> [usize; 4] {
        let mut labels = [0usize, 1, 2, 3];
        for g in self.word.iter().rev() {
            let sigma = g.index_map();
            let mut next = [0usize; 4];
            for i in 0..4 {
                next[i] = labels[sigma[i]];
            }
            labels = next;
        }
        labels
    }

    pub fn is_identity_action(&self) -> bool {
        self.index_map() == [0, 1, 2, 3]
    }
}

impl fmt::Display for SymmetryElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return write!(f, "Id");
        }
        // contract adjacent FlipA FlipB into fAB, the table's shorthand
        let mut parts: Vec<&str> = Vec::new();
        let mut i = 0;
        while i < self.word.len() {
            if i + 1 < self.word.len()
                && self.word[i] == Gen::FlipA
                && self.word[i + 1] == Gen::FlipB
            {
                parts.push("fAB");
                i += 2;
            } else {
                parts.push(self.word[i].token());
                i += 1;
            }
        }
        write!(f, "{}", parts.join(" "))
    }
}

// ---------------------------------------------------------------------------
// Model text format: `n=2; A = u*v ^ v; B = v`
// (`*` is AND, `^` is XOR over GF(2); latents named u,v,w,d,r in order)
// ---------------------------------------------------------------------------

pub fn parse_model(input: &str) -> Result<CausalModel> {
    let mut n: Option<usize> = None;
    let mut a: Option<String> = None;
    let mut b: Option<String> = None;
    for part in input.split(';') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let (lhs, rhs) = part
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("expected `name = expr` in `{part}`")))?;
        match lhs.trim() {
            "n" => {
                let v: usize = rhs
                    .trim()
                    .parse()
                    .map_err(|e| Error::Parse(format!("bad latent count: {e}")))?;
                if v > MAX_LATENTS {
                    return Err(Error::Parse(format!("latent count {v} exceeds {MAX_LATENTS}")));
                }
                n = Some(v);
            }
            "A" => a = Some(rhs.trim().to_string()),
            "B" => b = Some(rhs.trim().to_string()),
            other => return Err(Error::Parse(format!("unknown field `{other}`"))),
        }
    }
    let n = n.ok_or_else(|| Error::Parse("missing `n=`".into()))?;
    let a = a.ok_or_else(|| Error::Parse("missing `A =`".into()))?;
    let b = b.ok_or_else(|| Error::Parse("missing `B =`".into()))?;
    Ok(CausalModel::new(parse_gf2(&a, n)?, parse_gf2(&b, n)?).expect("same n"))
}

/// Parses a GF(2) expression of latents: xor of products of latents and the
/// constants 0/1. Returns the function as a BoolFunc.
fn parse_gf2(expr: &str, n: usize) -> Result<BoolFunc> {
    let mut anf = 0u32;
    for term in expr.split('^') {
        let term = term.trim();
        if term.is_empty() {
            return Err(Error::Parse(format!("empty xor term in `{expr}`")));
        }
        let mut mask = 0u32;
        let mut zero = false;
        for factor in term.split('*') {
            let factor = factor.trim();
            match factor {
                "0" => zero = true,
                "1" => {}
                name => {
                    let idx = DEFAULT_LATENT_NAMES[..n]
                        .iter()
                        .position(|&l| l == name)
                        .ok_or_else(|| {
                            Error::Parse(format!(
                                "unknown latent `{name}` (have {:?})",
                                &DEFAULT_LATENT_NAMES[..n]
                            ))
                        })?;
                    mask |= 1 << idx;
                }
            }
        }
        if !zero {
            anf ^= 1 << mask;
        }
    }
    // rebuild the table from the ANF through the Moebius involution
    let table = mobius(n, anf);
    let f = BoolFunc::from_table(n, table)?;
    debug_assert_eq!(f.anf(), anf);
    Ok(f)
}

/// Renders the ANF with monomials sorted by descending degree then latent
/// indices, matching the presentation of the worked examples.
fn format_gf2(f: &BoolFunc, names: &[String]) -> String {
    let mut masks: Vec<u32> = (0..32)
        .filter(|&m| f.anf() >> m & 1 == 1)
        .collect();
    if masks.is_empty() {
        return "0".to_string();
    }
    masks.sort_by(|a, b| {
        b.count_ones()
            .cmp(&a.count_ones())
            .then_with(|| a.cmp(b))
    });
    masks
        .iter()
        .map(|&m| {
            if m == 0 {
                "1".to_string()
            } else {
                (0..names.len())
                    .filter(|&j| m >> j & 1 == 1)
                    .map(|j| names[j].clone())
                    .collect::<Vec<_>>()
                    .join("*")
            }
        })
        .collect::<Vec<_>>()
        .join(" ^ ")
}

pub fn format_model(m: &CausalModel) -> String {
    format!(
        "n={}; A = {}; B = {}",
        m.n(),
        format_gf2(m.f_a(), m.latent_names()),
        format_gf2(m.f_b(), m.latent_names())
    )
}

impl fmt::Display for CausalModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_model(self))
    }
}

/// The closure of the five generators acting on outcome indices, as pairs of
/// (index map, canonical shortest word). BFS order makes words canonical.
pub fn group_closure() -> Vec<([usize; 4], SymmetryElem)> {
    let gens = [Gen::FlipA, Gen::FlipB, Gen::Swap, Gen::AddBToA];
    let mut seen: Vec<([usize; 4], SymmetryElem)> =
        vec![([0, 1, 2, 3], SymmetryElem::identity())];
    let mut frontier = vec![SymmetryElem::identity()];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for elem in frontier {
            for g in gens {
                let mut word = elem.word.clone();
                word.push(g);
                let cand = SymmetryElem::from_word(word);
                let map = cand.index_map();
                if !seen.iter().any(|(m, _)| *m == map) {
                    seen.push((map, cand.clone()));
                    next.push(cand);
                }
            }
        }
        frontier = next;
    }
    seen
}
