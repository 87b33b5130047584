//! Polynomial sign conditions and feasibility tests on the joint
//! distribution, shared by the implicitization pipeline and the catalogue.

use std::fmt;
use std::sync::OnceLock;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::geometry::JointDist;
use crate::poly::{parse_polynomial, Coef, Polynomial, Ring};

/// The observed-variable ring in outcome-index order p00, p01, p10, p11;
/// polynomial evaluation aligns with `JointDist`.
pub fn p_ring() -> &'static Ring {
    static RING: OnceLock<Ring> = OnceLock::new();
    RING.get_or_init(|| Ring::new(["p00", "p01", "p10", "p11"]).expect("fixed names"))
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Relation {
    Eq,
    Gt,
    Ge,
    Lt,
    Le,
}

impl Relation {
    pub fn symbol(&self) -> &'static str {
        match self {
            Relation::Eq => "=",
            Relation::Gt => ">",
            Relation::Ge => ">=",
            Relation::Lt => "<",
            Relation::Le => "<=",
        }
    }

    pub fn holds(&self, v: &Coef) -> bool {
        match self {
            Relation::Eq => v.is_zero(),
            Relation::Gt => v.is_positive(),
            Relation::Ge => !v.is_negative(),
            Relation::Lt => v.is_negative(),
            Relation::Le => !v.is_positive(),
        }
    }

    /// The relation satisfied by -poly whenever `self` is satisfied by poly.
    pub fn flipped(&self) -> Relation {
        match self {
            Relation::Eq => Relation::Eq,
            Relation::Gt => Relation::Lt,
            Relation::Ge => Relation::Le,
            Relation::Lt => Relation::Gt,
            Relation::Le => Relation::Ge,
        }
    }
}

/// A single polynomial sign condition `poly REL 0` on the p_ab.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SignCondition {
    pub poly: Polynomial,
    pub rel: Relation,
}

impl SignCondition {
    pub fn new(poly: Polynomial, rel: Relation) -> Result<SignCondition> {
        if poly.is_zero() {
            return Err(Error::Invalid("sign condition on the zero polynomial".into()));
        }
        if poly.ring() != p_ring() {
            let poly = poly.embed(p_ring())?;
            return Ok(SignCondition { poly, rel });
        }
        Ok(SignCondition { poly, rel })
    }

    /// Parses `lhs REL rhs` in the polynomial syntax.
    pub fn parse(input: &str) -> Result<SignCondition> {
        for (tok, rel) in [
            (">=", Relation::Ge),
            ("<=", Relation::Le),
            ("=", Relation::Eq),
            (">", Relation::Gt),
            ("<", Relation::Lt),
        ] {
            if let Some((lhs, rhs)) = input.split_once(tok) {
                // careful: "=" would also split ">="; ordering above prevents it
                let l = parse_polynomial(p_ring(), lhs)?;
                let r = parse_polynomial(p_ring(), rhs)?;
                return SignCondition::new(l.sub(&r), rel);
            }
        }
        Err(Error::Parse(format!("no relation in `{input}`")))
    }

    pub fn eval(&self, p: &JointDist) -> bool {
        let v = self.poly.eval(p.p());
        self.rel.holds(&v)
    }

    /// Substitutes p-variables along an outcome-index map (new variable i
    /// receives old variable map[i]), the test-side action of a symmetry.
    pub fn permute_vars(&self, map: &[usize; 4]) -> SignCondition {
        let ring = p_ring();
        // build replacement list: variable map[i] becomes variable i
        let mut inverse = [0usize; 4];
        for (i, &m) in map.iter().enumerate() {
            inverse[m] = i;
        }
        let terms = self
            .poly
            .terms()
            .iter()
            .map(|(mon, c)| {
                let e = mon.exps();
                let mut exps = [0u16; 4];
                for (old, &val) in e.iter().enumerate() {
                    exps[inverse[old]] = val;
                }
                (crate::poly::Monomial::from_exps(&exps), c.clone())
            })
            .collect();
        SignCondition { poly: Polynomial::from_terms(ring, terms), rel: self.rel }
    }

    /// Monic-positive canonical form: leading coefficient +1, with the
    /// relation flipped when scaling by a negative. Equalities normalize to
    /// monic directly.
    pub fn canonicalize(&self) -> SignCondition {
        let Some((_, lc)) = self.poly.leading_term(crate::poly::MonomialOrder::Lex) else {
            return self.clone();
        };
        if lc.is_negative() {
            SignCondition { poly: self.poly.neg(), rel: self.rel.flipped() }
        } else {
            self.clone()
        }
        .scale_monic()
    }

    fn scale_monic(self) -> SignCondition {
        let Some((_, lc)) = self.poly.leading_term(crate::poly::MonomialOrder::Lex) else {
            return self;
        };
        let inv = lc.recip();
        if inv.is_one() {
            return self;
        }
        SignCondition { poly: self.poly.scale(&inv), rel: self.rel }
    }
}

impl fmt::Display for SignCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} 0", self.poly, self.rel.symbol())
    }
}

/// One conjunction of sign conditions plus the open-interval convention:
/// coordinates not pinned to a constant by an equality must lie strictly
/// inside (0,1).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TestBranch {
    conditions: Vec<SignCondition>,
    open: [bool; 4],
}

impl TestBranch {
    pub fn new(conditions: Vec<SignCondition>) -> TestBranch {
        let open = derive_open(&conditions);
        TestBranch { conditions, open }
    }

    pub fn conditions(&self) -> &[SignCondition] {
        &self.conditions
    }

    pub fn open_coords(&self) -> [bool; 4] {
        self.open
    }

    fn first_failure(&self, p: &JointDist) -> Option<String> {
        for (i, &required) in self.open.iter().enumerate() {
            if required {
                let v = &p.p()[i];
                if !(v.is_positive() && *v < Coef::one()) {
                    return Some(format!(
                        "open-interval constraint 0 < {} < 1 (value {})",
                        crate::geometry::OUTCOME_NAMES[i],
                        v
                    ));
                }
            }
        }
        for c in &self.conditions {
            if !c.eval(p) {
                let kind = match c.rel {
                    Relation::Eq => "equality",
                    Relation::Gt | Relation::Lt => "strict inequality",
                    Relation::Ge | Relation::Le => "inequality",
                };
                return Some(format!("{kind} violated: {c}"));
            }
        }
        None
    }

    fn evaluate(&self, p: &JointDist) -> bool {
        self.first_failure(p).is_none()
    }

    fn permute_vars(&self, map: &[usize; 4]) -> TestBranch {
        TestBranch::new(self.conditions.iter().map(|c| c.permute_vars(map)).collect())
    }

    fn canonical_key(&self) -> String {
        let mut parts: Vec<String> = self
            .conditions
            .iter()
            .map(|c| c.canonicalize().to_string())
            .collect();
        parts.sort();
        parts.join("; ")
    }
}

/// A feasibility test. Most catalogue tests are one conjunction; a union of
/// conjunctions covers sets whose degenerate slices fall outside the closure
/// of the generic stratum; the cone form covers classes whose set is the
/// bundle of segments from a vertex into a lower row's set.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FeasibilityTest {
    form: TestForm,
}

#[derive(Clone, PartialEq, Eq, Debug)]
enum TestForm {
    Dnf(Vec<TestBranch>),
    Cone { apex: usize, base: Box<FeasibilityTest>, base_name: String },
}

impl FeasibilityTest {
    /// Single-conjunction test.
    pub fn new(conditions: Vec<SignCondition>) -> FeasibilityTest {
        FeasibilityTest { form: TestForm::Dnf(vec![TestBranch::new(conditions)]) }
    }

    pub fn with_branches(branches: Vec<Vec<SignCondition>>) -> FeasibilityTest {
        assert!(!branches.is_empty(), "a test needs at least one branch");
        FeasibilityTest {
            form: TestForm::Dnf(branches.into_iter().map(TestBranch::new).collect()),
        }
    }

    /// The set { t*vertex + (1-t)*y : t in (0,1), y passing `base` }, with
    /// the apex given as an outcome index 2a + b.
    pub fn cone(apex: usize, base: FeasibilityTest, base_name: impl Into<String>) -> FeasibilityTest {
        assert!(apex < 4);
        FeasibilityTest {
            form: TestForm::Cone { apex, base: Box::new(base), base_name: base_name.into() },
        }
    }

    pub fn branches(&self) -> &[TestBranch] {
        match &self.form {
            TestForm::Dnf(branches) => branches,
            TestForm::Cone { base, .. } => base.branches(),
        }
    }

    pub fn cone_parts(&self) -> Option<(usize, &FeasibilityTest, &str)> {
        match &self.form {
            TestForm::Dnf(_) => None,
            TestForm::Cone { apex, base, base_name } => Some((*apex, base, base_name)),
        }
    }

    /// Conditions of the primary (generic) branch.
    pub fn conditions(&self) -> &[SignCondition] {
        self.branches()[0].conditions()
    }

    /// Open-interval coordinates of the primary branch.
    pub fn open_coords(&self) -> [bool; 4] {
        match &self.form {
            TestForm::Dnf(branches) => branches[0].open_coords(),
            TestForm::Cone { .. } => [true; 4],
        }
    }

    pub fn evaluate(&self, p: &JointDist) -> bool {
        match &self.form {
            TestForm::Dnf(branches) => branches.iter().any(|b| b.evaluate(p)),
            TestForm::Cone { apex, base, .. } => cone_member(*apex, base, p),
        }
    }

    /// Why the test failed, for reporting; None when it passes.
    pub fn first_failure(&self, p: &JointDist) -> Option<String> {
        match &self.form {
            TestForm::Dnf(branches) => {
                let mut reasons = Vec::new();
                for b in branches {
                    match b.first_failure(p) {
                        None => return None,
                        Some(why) => reasons.push(why),
                    }
                }
                if reasons.len() == 1 {
                    Some(reasons.pop().expect("one reason"))
                } else {
                    Some(format!("every branch failed; first branch: {}", reasons[0]))
                }
            }
            TestForm::Cone { apex, base, base_name } => {
                if cone_member(*apex, base, p) {
                    None
                } else {
                    Some(format!(
                        "no mixture weight places the residual distribution in the \
                         {base_name} set (cone apex {})",
                        crate::geometry::OUTCOME_NAMES[*apex]
                    ))
                }
            }
        }
    }

    pub fn permute_vars(&self, map: &[usize; 4]) -> FeasibilityTest {
        match &self.form {
            TestForm::Dnf(branches) => FeasibilityTest {
                form: TestForm::Dnf(branches.iter().map(|b| b.permute_vars(map)).collect()),
            },
            TestForm::Cone { apex, base, base_name } => {
                // the transformed set is the cone from the transformed apex
                let new_apex = (0..4).find(|&i| map[i] == *apex).expect("permutation");
                FeasibilityTest {
                    form: TestForm::Cone {
                        apex: new_apex,
                        base: Box::new(base.permute_vars(map)),
                        base_name: base_name.clone(),
                    },
                }
            }
        }
    }

    /// Canonical key for syntactic comparison: sorted canonical branches.
    pub fn canonical_key(&self) -> String {
        match &self.form {
            TestForm::Dnf(branches) => {
                let mut parts: Vec<String> =
                    branches.iter().map(|b| b.canonical_key()).collect();
                parts.sort();
                parts.join(" || ")
            }
            TestForm::Cone { apex, base, .. } => {
                format!("cone[{apex}]({})", base.canonical_key())
            }
        }
    }
}

impl fmt::Display for FeasibilityTest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fmt_branch = |b: &TestBranch| -> String {
            if b.conditions().is_empty() {
                "(open-interval constraints only)".to_string()
            } else {
                let parts: Vec<String> =
                    b.conditions().iter().map(|c| c.to_string()).collect();
                parts.join("; ")
            }
        };
        match &self.form {
            TestForm::Dnf(branches) => {
                if branches.len() == 1 {
                    return write!(f, "{}", fmt_branch(&branches[0]));
                }
                let parts: Vec<String> =
                    branches.iter().map(|b| format!("[{}]", fmt_branch(b))).collect();
                write!(f, "{}", parts.join(" or "))
            }
            TestForm::Cone { apex, base_name, .. } => {
                write!(
                    f,
                    "mixture of the vertex [{}] with the {base_name} set, weight in (0,1)",
                    crate::geometry::OUTCOME_NAMES[*apex]
                )
            }
        }
    }
}

/// Exact cone membership: p is in the cone from e_apex over the base set
/// iff some s > 0 puts y(s) = (1+s) p - s e_apex inside the base set. The
/// y coordinates are affine in s, so each base condition becomes a
/// univariate sign condition decided by exact root isolation.
fn cone_member(apex: usize, base: &FeasibilityTest, p: &JointDist) -> bool {
    use crate::poly::UniPoly;
    // y_i(s) as degree-1 univariate polynomials
    let y: Vec<UniPoly> = (0..4)
        .map(|i| {
            let c0 = p.p()[i].clone();
            let c1 = if i == apex { p.p()[i].clone() - Coef::one() } else { p.p()[i].clone() };
            UniPoly::new(vec![c0, c1])
        })
        .collect();

    'branch: for branch in base.branches() {
        // conditions in s: base conditions composed with y, plus open bounds
        let mut strict: Vec<UniPoly> = Vec::new(); // required  > 0
        let mut weak: Vec<UniPoly> = Vec::new(); // required >= 0
        let mut equalities: Vec<UniPoly> = Vec::new();
        for (i, &open) in branch.open_coords().iter().enumerate() {
            if open {
                strict.push(y[i].clone());
                // 1 - y_i(s) > 0
                let c0 = Coef::one() - y[i].coeffs().first().cloned().unwrap_or_else(Coef::zero);
                let c1 = -y[i].coeffs().get(1).cloned().unwrap_or_else(Coef::zero);
                strict.push(UniPoly::new(vec![c0, c1]));
            }
        }
        for cond in branch.conditions() {
            let composed = compose_condition(&cond.poly, &y);
            match cond.rel {
                Relation::Eq => equalities.push(composed),
                Relation::Gt => strict.push(composed),
                Relation::Ge => weak.push(composed),
                Relation::Lt => strict.push(neg_uni(&composed)),
                Relation::Le => weak.push(neg_uni(&composed)),
            }
        }

        if let Some(eq) = equalities.iter().find(|e| !e.is_zero()) {
            // slice branches are affine in s: rational candidate roots
            if eq.degree() != 1 {
                continue 'branch; // unsupported shape; treated as unsatisfied
            }
            let root = -eq.coeffs()[0].clone() / &eq.coeffs()[1];
            if !root.is_positive() {
                continue 'branch;
            }
            let ok = equalities.iter().all(|e| e.eval(&root).is_zero())
                && strict.iter().all(|f| f.eval(&root).is_positive())
                && weak.iter().all(|f| !f.eval(&root).is_negative());
            if ok {
                return true;
            }
            continue 'branch;
        }

        // no equalities: decide on sign-constant intervals of the product
        let mut polys: Vec<&UniPoly> = Vec::new();
        let mut satisfied = true;
        for f in &strict {
            if f.is_zero() {
                satisfied = false;
                break;
            }
            if f.degree() > 0 {
                polys.push(f);
            } else if !f.coeffs()[0].is_positive() {
                satisfied = false;
                break;
            }
        }
        if !satisfied {
            continue 'branch;
        }
        for f in &weak {
            if f.is_zero() {
                continue;
            }
            if f.degree() > 0 {
                polys.push(f);
            } else if f.coeffs()[0].is_negative() {
                satisfied = false;
                break;
            }
        }
        if !satisfied {
            continue 'branch;
        }
        for s in candidate_points(&polys) {
            if !s.is_positive() {
                continue;
            }
            if strict.iter().all(|f| f.eval(&s).is_positive())
                && weak.iter().all(|f| !f.eval(&s).is_negative())
            {
                return true;
            }
        }
    }
    false
}

fn neg_uni(p: &crate::poly::UniPoly) -> crate::poly::UniPoly {
    crate::poly::UniPoly::new(p.coeffs().iter().map(|c| -c).collect())
}

/// Substitutes affine y_i(s) into a p-polynomial, yielding a univariate
/// polynomial in s.
fn compose_condition(poly: &Polynomial, y: &[crate::poly::UniPoly]) -> crate::poly::UniPoly {
    use crate::poly::UniPoly;
    let mut acc = UniPoly::zero();
    for (m, c) in poly.terms() {
        let mut term = UniPoly::new(vec![c.clone()]);
        for (i, &e) in m.exps().iter().enumerate() {
            for _ in 0..e {
                term = mul_uni(&term, &y[i]);
            }
        }
        acc = add_uni(&acc, &term);
    }
    acc
}

fn mul_uni(a: &crate::poly::UniPoly, b: &crate::poly::UniPoly) -> crate::poly::UniPoly {
    use crate::poly::UniPoly;
    if a.is_zero() || b.is_zero() {
        return UniPoly::zero();
    }
    let mut out = vec![Coef::zero(); a.degree() + b.degree() + 2];
    for (i, ca) in a.coeffs().iter().enumerate() {
        for (j, cb) in b.coeffs().iter().enumerate() {
            out[i + j] += ca * cb;
        }
    }
    UniPoly::new(out)
}

fn add_uni(a: &crate::poly::UniPoly, b: &crate::poly::UniPoly) -> crate::poly::UniPoly {
    use crate::poly::UniPoly;
    let n = (a.coeffs().len()).max(b.coeffs().len());
    let mut out = vec![Coef::zero(); n];
    for (i, c) in a.coeffs().iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.coeffs().iter().enumerate() {
        out[i] += c;
    }
    UniPoly::new(out)
}

/// Rational sample points hitting every sign-constant region of (0, inf)
/// for the given polynomials: one point before the first root, one between
/// consecutive roots, one past the last.
fn candidate_points(polys: &[&crate::poly::UniPoly]) -> Vec<Coef> {
    use crate::poly::UniPoly;
    if polys.is_empty() {
        return vec![Coef::one()];
    }
    let mut product = UniPoly::new(vec![Coef::one()]);
    for p in polys {
        product = mul_uni(&product, p);
    }
    let bound = product.root_bound() + Coef::one();
    // a left sample clear of all roots
    let mut eps = Coef::new(1.into(), 2.into());
    for _ in 0..128 {
        if product.count_roots(&Coef::zero(), &eps) == 0 && !product.eval(&eps).is_zero() {
            break;
        }
        eps = eps / Coef::from_integer(2.into());
    }
    let mut points = vec![eps];
    let intervals = product.isolate_roots(&Coef::zero(), &bound);
    for w in intervals.windows(2) {
        let mid = (w[0].1.clone() + &w[1].0) / Coef::from_integer(2.into());
        if !product.eval(&mid).is_zero() {
            points.push(mid);
        }
    }
    if let Some((_, b)) = intervals.last() {
        points.push(b.clone() + Coef::one());
    }
    points.push(bound + Coef::one());
    points
}

/// A coordinate is exempt from the open-interval requirement when an
/// equality pins it to a constant (p_i = 0 faces and the p_i = 1 vertex).
fn derive_open(conditions: &[SignCondition]) -> [bool; 4] {
    let mut open = [true; 4];
    for c in conditions {
        if c.rel != Relation::Eq {
            continue;
        }
        if let Some(var) = pinned_variable(&c.poly) {
            open[var] = false;
        }
    }
    open
}

/// Recognizes polynomials of the shape c*p_i + d (c != 0), i.e. equalities
/// pinning a single coordinate.
fn pinned_variable(poly: &Polynomial) -> Option<usize> {
    let vars = poly.support_vars();
    if vars.len() != 1 {
        return None;
    }
    let v = vars[0];
    if poly.degree_in(v) == 1 {
        Some(v)
    } else {
        None
    }
}
