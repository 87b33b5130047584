//! The catalogue of observational equivalence classes as executable data:
//! fiducial rows (model, feasibility test, printed orbit words) plus the
//! expansion of each row into its orbit under the symmetry group.
//!
//! Orbits are regenerated by exhaustive group action; the printed orbit
//! words are cross-checked and every discrepancy is reported in
//! `Catalogue::warnings`, never silently repaired.

use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::feasibility::{FeasibilityTest, SignCondition};
use crate::geometry::{
    joint_distribution, sample_cloud, support_pattern, JointDist, SupportPattern,
};
use crate::model::{
    format_model, group_closure, parse_model, CausalModel, SymmetryElem,
};

pub const CATALOGUE_DATA: &str = include_str!("../data/catalogue.v1.txt");
pub const FORMAT_HEADER: &str = "causal-varieties/v1";

/// Points per side used by the sampled set-equality checks during orbit
/// regeneration. Classes are later re-verified at much larger sample sizes
/// by the certification suite.
const ORBIT_CHECK_POINTS: usize = 64;
const ORBIT_CHECK_SEED: u64 = 0xCA7A;

/// Structural row label (n, m, x): latent count, common-cause count, and an
/// optional disambiguating letter.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct RowLabel {
    pub n: u8,
    pub m: u8,
    pub x: Option<char>,
}

impl fmt::Display for RowLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.x {
            Some(x) => write!(f, "({},{},{x})", self.n, self.m),
            None => write!(f, "({},{})", self.n, self.m),
        }
    }
}

impl RowLabel {
    pub fn parse(s: &str) -> Result<RowLabel> {
        let inner = s
            .trim()
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("bad row label `{s}`")))?;
        let parts: Vec<&str> = inner.split(',').map(str::trim).collect();
        if parts.len() != 2 && parts.len() != 3 {
            return Err(Error::Parse(format!("bad row label `{s}`")));
        }
        let n: u8 = parts[0]
            .parse()
            .map_err(|e| Error::Parse(format!("bad n in `{s}`: {e}")))?;
        let m: u8 = parts[1]
            .parse()
            .map_err(|e| Error::Parse(format!("bad m in `{s}`: {e}")))?;
        let x = match parts.get(2) {
            None => None,
            Some(t) if t.len() == 1 => t.chars().next(),
            Some(t) => {
                return Err(Error::Parse(format!("bad x part `{t}` in `{s}`")));
            }
        };
        Ok(RowLabel { n, m, x })
    }
}

/// Class label (n,m,x)_g.
#[derive(Clone, Debug)]
pub struct ClassId {
    pub label: RowLabel,
    pub g: SymmetryElem,
}

impl ClassId {
    pub fn parse(s: &str) -> Result<ClassId> {
        let (row, word) = s
            .trim()
            .rsplit_once('_')
            .ok_or_else(|| Error::Parse(format!("class id `{s}` needs a `_g` suffix")))?;
        Ok(ClassId { label: RowLabel::parse(row)?, g: SymmetryElem::parse(word)? })
    }
}

impl fmt::Display for ClassId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let word = self.g.to_string().replace(' ', "");
        write!(f, "{}_{}", self.label, word)
    }
}

/// A fiducial catalogue row as authored in the data file.
#[derive(Clone, Debug)]
pub struct FiducialRow {
    pub label: RowLabel,
    pub model: CausalModel,
    pub test: FeasibilityTest,
    pub printed_orbit: Vec<String>,
}

/// One expanded observational equivalence class: a symmetry image of a
/// fiducial row.
#[derive(Debug)]
pub struct ExpandedClass {
    pub row_index: usize,
    pub label: RowLabel,
    /// Canonical (BFS-minimal) group element mapping the fiducial here.
    pub g: SymmetryElem,
    g_map: [usize; 4],
    bfs_index: usize,
    pub model: CausalModel,
    pub test: FeasibilityTest,
    pub support: SupportPattern,
    /// Exact sample of the class set, reused by set-equality checks.
    cloud: Vec<JointDist>,
    /// True when the class was recovered by group action but missing from
    /// the printed orbit list.
    pub regenerated: bool,
    cert: OnceLock<Option<String>>,
}

impl ExpandedClass {
    pub fn id(&self) -> ClassId {
        ClassId { label: self.label, g: self.g.clone() }
    }

    pub fn g_map(&self) -> [usize; 4] {
        self.g_map
    }

    /// The exact sample of the class set drawn at load time.
    pub fn cloud(&self) -> &[JointDist] {
        &self.cloud
    }

    /// Cached load-time certification: the class model's sampled cloud must
    /// pass the class test exactly.
    pub fn certify(&self) -> Result<()> {
        let out = self.cert.get_or_init(|| {
            for (i, p) in sample_cloud(&self.model, 256, ORBIT_CHECK_SEED ^ 1).iter().enumerate()
            {
                if let Some(why) = self.test.first_failure(p) {
                    return Some(format!("sample {i} of {} fails: {why}", self.id()));
                }
            }
            None
        });
        match out {
            None => Ok(()),
            Some(msg) => Err(Error::Invalid(msg.clone())),
        }
    }
}

/// The loaded catalogue: rows, expanded classes (deterministically ordered
/// by (n, m, x, group element)), and regeneration diagnostics.
#[derive(Debug)]
pub struct Catalogue {
    rows: Vec<FiducialRow>,
    classes: Vec<ExpandedClass>,
    warnings: Vec<String>,
}

/// Applies a symmetry to a feasibility test, consistently with the action
/// on distributions.
pub fn transform_test(g: &SymmetryElem, t: &FeasibilityTest) -> FeasibilityTest {
    t.permute_vars(&g.index_map())
}

/// Evaluates a feasibility test at a distribution, exactly.
pub fn evaluate_test(t: &FeasibilityTest, p: &JointDist) -> bool {
    t.evaluate(p)
}

impl Catalogue {
    pub fn rows(&self) -> &[FiducialRow] {
        &self.rows
    }

    pub fn classes(&self) -> &[ExpandedClass] {
        &self.classes
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    pub fn row(&self, label: RowLabel) -> Option<&FiducialRow> {
        self.rows.iter().find(|r| r.label == label)
    }

    /// All expanded classes whose tests pass at `p`, in catalogue order.
    pub fn classify_distribution(&self, p: &JointDist) -> Vec<ClassId> {
        self.classes
            .iter()
            .filter(|c| c.test.evaluate(p))
            .map(|c| c.id())
            .collect()
    }

    /// Resolves a class id; the word is matched by its group action, so any
    /// spelling of the same element finds the class.
    pub fn lookup_class(&self, id: &ClassId) -> Result<&ExpandedClass> {
        let map = id.g.index_map();
        let row_index = self
            .rows
            .iter()
            .position(|r| r.label == id.label)
            .ok_or_else(|| Error::UnknownClass(id.to_string()))?;
        let stab = self.stabilizer_of_row(row_index);
        self.classes
            .iter()
            .find(|c| {
                c.row_index == row_index && same_coset(&map, &c.g_map, &stab)
            })
            .ok_or_else(|| Error::UnknownClass(id.to_string()))
    }

    fn stabilizer_of_row(&self, row_index: usize) -> Vec<[usize; 4]> {
        let row = &self.rows[row_index];
        let cloud = sample_cloud(&row.model, ORBIT_CHECK_POINTS, ORBIT_CHECK_SEED);
        stabilizer(row, &cloud)
    }

    pub fn load_default() -> Result<Catalogue> {
        Catalogue::load(CATALOGUE_DATA)
    }

    /// Shared instance; the embedded data file is validated by the test
    /// suite, so a load failure here is a packaging bug.
    pub fn global() -> &'static Catalogue {
        static CAT: OnceLock<Catalogue> = OnceLock::new();
        CAT.get_or_init(|| {
            Catalogue::load_default().expect("embedded catalogue data is well-formed")
        })
    }

    pub fn load(data: &str) -> Result<Catalogue> {
        let rows = parse_rows(data)?;
        let mut warnings = Vec::new();
        let closure = closure_cached();

        // One exact cloud per row; the cloud of a transformed model is the
        // permuted cloud (the symmetry commutation square), so set checks
        // never resample.
        let row_clouds: Vec<Vec<JointDist>> = rows
            .iter()
            .map(|r| sample_cloud(&r.model, ORBIT_CHECK_POINTS, ORBIT_CHECK_SEED))
            .collect();

        // Phase A: admit the classes named by parsable printed orbit words.
        let mut classes: Vec<ExpandedClass> = Vec::new();
        let mut row_cosets: Vec<Vec<usize>> = Vec::new(); // admitted coset reps per row
        let mut stabs: Vec<Vec<[usize; 4]>> = Vec::new();
        for (row_index, row) in rows.iter().enumerate() {
            let stab = stabilizer(row, &row_clouds[row_index]);
            let mut admitted_reps: Vec<usize> = Vec::new();
            for word in &row.printed_orbit {
                let elem = match SymmetryElem::parse(word) {
                    Ok(e) => e,
                    Err(_) => {
                        warnings.push(format!(
                            "row {}: printed orbit word `{word}` does not parse; \
                             the class it names is recovered by group action",
                            row.label
                        ));
                        continue;
                    }
                };
                let map = elem.index_map();
                let rep = coset_rep_index(&map, &stab, closure);
                if admitted_reps.contains(&rep) {
                    warnings.push(format!(
                        "row {}: printed word `{word}` repeats an already-listed class \
                         ({} acts identically)",
                        row.label, closure[rep].1
                    ));
                    continue;
                }
                admitted_reps.push(rep);
                classes.push(make_class(row_index, row, rep, &row_clouds[row_index], false));
            }
            row_cosets.push(admitted_reps);
            stabs.push(stab);
        }

        // Phase B: any coset not claimed by a printed word anywhere must be
        // a duplicate of an admitted class (a symmetric image catalogued
        // under another structural label) or a genuinely missing class.
        for (row_index, row) in rows.iter().enumerate() {
            let stab = &stabs[row_index];
            let mut seen_reps: Vec<usize> = Vec::new();
            for (map, _) in closure {
                let rep = coset_rep_index(map, stab, closure);
                if seen_reps.contains(&rep) || row_cosets[row_index].contains(&rep) {
                    continue;
                }
                seen_reps.push(rep);
                let cand = make_class(row_index, row, rep, &row_clouds[row_index], true);
                let claimed = classes.iter().any(|c| class_sets_equal(c, &cand));
                if !claimed {
                    warnings.push(format!(
                        "row {}: class {} exists under the group action but is \
                         missing from the printed orbit list; admitted as regenerated",
                        row.label,
                        cand.id()
                    ));
                    row_cosets[row_index].push(rep);
                    classes.push(cand);
                }
            }
        }

        // cross-row duplicate check among admitted classes
        for i in 0..classes.len() {
            for j in (i + 1)..classes.len() {
                if class_sets_equal(&classes[i], &classes[j]) {
                    warnings.push(format!(
                        "classes {} and {} describe the same semi-algebraic set",
                        classes[i].id(),
                        classes[j].id()
                    ));
                }
            }
        }

        classes.sort_by(|a, b| {
            (a.label, a.bfs_index).cmp(&(b.label, b.bfs_index))
        });
        Ok(Catalogue { rows, classes, warnings })
    }
}

fn make_class(
    row_index: usize,
    row: &FiducialRow,
    rep: usize,
    row_cloud: &[JointDist],
    regenerated: bool,
) -> ExpandedClass {
    let (map, elem) = &closure_cached()[rep];
    let model = elem.apply_model(&row.model);
    let test = row.test.permute_vars(map);
    let support = support_pattern(&model);
    let cloud = row_cloud.iter().map(|p| p.permute(map)).collect();
    ExpandedClass {
        row_index,
        label: row.label,
        g: elem.clone(),
        g_map: *map,
        bfs_index: rep,
        model,
        test,
        support,
        cloud,
        regenerated,
        cert: OnceLock::new(),
    }
}

/// Group elements that fix the row's semi-algebraic set: syntactic test
/// equality accepts immediately; otherwise both sampled inclusions must
/// hold, with the transformed cloud obtained by permuting the row cloud.
fn stabilizer(row: &FiducialRow, cloud: &[JointDist]) -> Vec<[usize; 4]> {
    let support = support_pattern(&row.model);
    let key = row.test.canonical_key();
    closure_cached()
        .iter()
        .filter(|(map, elem)| {
            let cand_model = elem.apply_model(&row.model);
            if support_pattern(&cand_model) != support {
                return false;
            }
            let cand_test = row.test.permute_vars(map);
            if cand_test.canonical_key() == key {
                return true;
            }
            cloud.iter().all(|p| cand_test.evaluate(p))
                && cloud.iter().map(|p| p.permute(map)).all(|p| row.test.evaluate(&p))
        })
        .map(|(map, _)| *map)
        .collect()
}

/// Sampled set equality between two expanded classes.
fn class_sets_equal(a: &ExpandedClass, b: &ExpandedClass) -> bool {
    if a.support != b.support {
        return false;
    }
    if a.test.canonical_key() == b.test.canonical_key() {
        return true;
    }
    a.cloud.iter().all(|p| b.test.evaluate(p)) && b.cloud.iter().all(|p| a.test.evaluate(p))
}

fn closure_cached() -> &'static Vec<([usize; 4], SymmetryElem)> {
    static CLOSURE: OnceLock<Vec<([usize; 4], SymmetryElem)>> = OnceLock::new();
    CLOSURE.get_or_init(group_closure)
}

fn compose_maps(then: &[usize; 4], first: &[usize; 4]) -> [usize; 4] {
    let mut out = [0usize; 4];
    for i in 0..4 {
        out[i] = first[then[i]];
    }
    out
}

fn invert_map(map: &[usize; 4]) -> [usize; 4] {
    let mut out = [0usize; 4];
    for i in 0..4 {
        out[map[i]] = i;
    }
    out
}

fn same_coset(a: &[usize; 4], b: &[usize; 4], stab: &[[usize; 4]]) -> bool {
    // a and b name the same class iff b^{-1} a stabilizes the fiducial set
    let rel = compose_maps(&invert_map(b), a);
    stab.contains(&rel)
}

/// BFS-minimal closure index within the coset of `map`.
fn coset_rep_index(
    map: &[usize; 4],
    stab: &[[usize; 4]],
    closure: &[([usize; 4], SymmetryElem)],
) -> usize {
    closure
        .iter()
        .position(|(m, _)| same_coset(m, map, stab))
        .expect("coset has a representative in the closure")
}

fn parse_rows(data: &str) -> Result<Vec<FiducialRow>> {
    let mut lines = data.lines();
    match lines.next() {
        Some(first) if first.starts_with(FORMAT_HEADER) => {}
        other => {
            return Err(Error::Parse(format!(
                "catalogue data must start with `{FORMAT_HEADER}`, found {other:?}"
            )))
        }
    }
    let mut rows: Vec<FiducialRow> = Vec::new();
    let mut label: Option<RowLabel> = None;
    let mut model: Option<CausalModel> = None;
    let mut test: Option<FeasibilityTest> = None;
    let mut orbit: Option<Vec<String>> = None;

    let mut flush = |label: &mut Option<RowLabel>,
                     model: &mut Option<CausalModel>,
                     test: &mut Option<FeasibilityTest>,
                     orbit: &mut Option<Vec<String>>|
     -> Result<Option<FiducialRow>> {
        match (label.take(), model.take(), test.take(), orbit.take()) {
            (None, None, None, None) => Ok(None),
            (Some(label), Some(model), Some(test), Some(orbit)) => {
                Ok(Some(FiducialRow { label, model, test, printed_orbit: orbit }))
            }
            (Some(label), ..) => {
                Err(Error::Parse(format!("row {label} is missing model, test or orbit")))
            }
            _ => Err(Error::Parse("row fields appear before any `row` line".into())),
        }
    };

    for line in lines {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(rest) = line.strip_prefix("row ") {
            if let Some(done) = flush(&mut label, &mut model, &mut test, &mut orbit)? {
                rows.push(done);
            }
            label = Some(RowLabel::parse(rest)?);
        } else if let Some(rest) = line.strip_prefix("model ") {
            model = Some(parse_model(rest)?);
        } else if line == "test" {
            test = Some(FeasibilityTest::new(vec![]));
        } else if let Some(rest) = line.strip_prefix("test ") {
            let conditions: Result<Vec<SignCondition>> =
                rest.split(';').map(SignCondition::parse).collect();
            test = Some(FeasibilityTest::new(conditions?));
        } else if let Some(rest) = line.strip_prefix("or ") {
            // an extra branch of the current test (union of conjunctions)
            let current = test.take().ok_or_else(|| {
                Error::Parse("`or` line without a preceding `test` line".into())
            })?;
            let conditions: Result<Vec<SignCondition>> =
                rest.split(';').map(SignCondition::parse).collect();
            let mut branches: Vec<Vec<SignCondition>> = current
                .branches()
                .iter()
                .map(|b| b.conditions().to_vec())
                .collect();
            branches.push(conditions?);
            test = Some(FeasibilityTest::with_branches(branches));
        } else if let Some(rest) = line.strip_prefix("orbit ") {
            orbit = Some(rest.split('|').map(|w| w.trim().to_string()).collect());
        } else {
            return Err(Error::Parse(format!("unrecognized catalogue line `{line}`")));
        }
    }
    if let Some(done) = flush(&mut label, &mut model, &mut test, &mut orbit)? {
        rows.push(done);
    }
    if rows.is_empty() {
        return Err(Error::Parse("catalogue has no rows".into()));
    }
    Ok(rows)
}

/// Serializes the catalogue rows back to the versioned text format.
pub fn format_rows(rows: &[FiducialRow]) -> String {
    let mut out = format!("{FORMAT_HEADER} catalogue\n");
    for row in rows {
        out.push_str(&format!("\nrow {}\n", row.label));
        out.push_str(&format!("model {}\n", format_model(&row.model)));
        for (i, branch) in row.test.branches().iter().enumerate() {
            let keyword = if i == 0 { "test" } else { "or" };
            if branch.conditions().is_empty() {
                out.push_str(&format!("{keyword}\n"));
            } else {
                let conds: Vec<String> =
                    branch.conditions().iter().map(|c| c.to_string()).collect();
                out.push_str(&format!("{keyword} {}\n", conds.join("; ")));
            }
        }
        out.push_str(&format!("orbit {}\n", row.printed_orbit.join(" | ")));
    }
    out
}

/// Convenience: certify a class test against its model at load scale; the
/// heavyweight certification lives in the acceptance suite.
pub fn quick_check_class(c: &ExpandedClass) -> Result<()> {
    c.certify()
}

/// Distribution image under a symmetry, exposed for tests and the CLI.
pub fn apply_symmetry_dist(g: &SymmetryElem, p: &JointDist) -> JointDist {
    p.permute(&g.index_map())
}

/// Model image under a symmetry.
pub fn apply_symmetry(g: &SymmetryElem, m: &CausalModel) -> CausalModel {
    g.apply_model(m)
}

/// The commutation square dist(g*m, q) = g*dist(m, q), checked exactly.
pub fn commutation_holds(g: &SymmetryElem, m: &CausalModel, q: &crate::geometry::LatentDist) -> bool {
    let lhs = joint_distribution(&g.apply_model(m), q).expect("dimensions match");
    let rhs = apply_symmetry_dist(g, &joint_distribution(m, q).expect("dimensions match"));
    lhs == rhs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_rational;

    fn dist(s: [&str; 4]) -> JointDist {
        JointDist::new([
            parse_rational(s[0]).unwrap(),
            parse_rational(s[1]).unwrap(),
            parse_rational(s[2]).unwrap(),
            parse_rational(s[3]).unwrap(),
        ])
        .unwrap()
    }

    #[test]
    fn loads_and_counts_classes() {
        let cat = Catalogue::global();
        assert_eq!(cat.rows().len(), 20);
        for w in cat.warnings() {
            println!("warning: {w}");
        }
        let n_le = |n: u8| {
            cat.classes().iter().filter(|c| c.label.n <= n).count()
        };
        // the n <= 2 counts stated in the catalogue discussion
        assert_eq!(n_le(0), 4);
        assert_eq!(n_le(1), 10);
        assert_eq!(n_le(2), 29);
    }

    #[test]
    fn orbit_sizes_for_small_n() {
        let cat = Catalogue::global();
        let size = |label: &str| {
            let label = RowLabel::parse(label).unwrap();
            cat.classes().iter().filter(|c| c.label == label).count()
        };
        assert_eq!(size("(0,0)"), 4);
        assert_eq!(size("(1,0)"), 4);
        assert_eq!(size("(1,1)"), 2);
        assert_eq!(size("(2,0)"), 1);
        assert_eq!(size("(2,1,a)"), 2);
        assert_eq!(size("(2,1,b)"), 4);
        assert_eq!(size("(2,2)"), 12);
    }

    #[test]
    fn classify_uniform_distribution() {
        let cat = Catalogue::global();
        let ids: Vec<String> =
            cat.classify_distribution(&JointDist::uniform()).iter().map(|c| c.to_string()).collect();
        assert!(ids.contains(&"(2,0)_Id".to_string()));
        assert!(ids.contains(&"(2,1,a)_Id".to_string()));
        assert!(ids.contains(&"(2,1,a)_S".to_string()));
        assert!(!ids.iter().any(|s| s.starts_with("(3,1,a)")));
    }

    #[test]
    fn classify_vertex_and_edge() {
        let cat = Catalogue::global();
        let vertex = cat.classify_distribution(&JointDist::vertex(0, 0));
        let vertex_names: Vec<String> = vertex.iter().map(|c| c.to_string()).collect();
        assert!(vertex_names.contains(&"(0,0)_Id".to_string()));
        assert_eq!(vertex.iter().filter(|c| c.label.n == 0).count(), 1);

        // p = (1/2, 0, 0, 1/2) lies on the correlated edge: (1,1)_Id
        let p = dist(["1/2", "0", "0", "1/2"]);
        let ids: Vec<String> =
            cat.classify_distribution(&p).iter().map(|c| c.to_string()).collect();
        assert!(ids.contains(&"(1,1)_Id".to_string()));
        assert!(!ids.contains(&"(1,1)_fA".to_string()));
    }

    #[test]
    fn lookup_resolves_words_by_action() {
        let cat = Catalogue::global();
        let id = ClassId::parse("(2,1,a)_S").unwrap();
        let class = cat.lookup_class(&id).unwrap();
        assert_eq!(class.id().to_string(), "(2,1,a)_S");
        class.certify().unwrap();
        // (1,1)_fA is the anticorrelated edge
        let id = ClassId::parse("(1,1)_fA").unwrap();
        let class = cat.lookup_class(&id).unwrap();
        assert!(class.test.evaluate(&dist(["0", "1/2", "1/2", "0"])));
        // unknown ids are reported
        assert!(cat.lookup_class(&ClassId::parse("(9,9)_Id").unwrap()).is_err());
        // a word that leaves the row's orbit set is unknown for that row:
        // X maps the (2,1,a) fan onto the (2,0) fan
        let id = ClassId::parse("(2,1,a)_X").unwrap();
        assert!(cat.lookup_class(&id).is_err());
    }

    #[test]
    fn starfleet_orbit_has_twelve_classes() {
        let cat = Catalogue::global();
        let label = RowLabel::parse("(2,2)").unwrap();
        let classes: Vec<&ExpandedClass> =
            cat.classes().iter().filter(|c| c.label == label).collect();
        assert_eq!(classes.len(), 12);
        // the unparseable printed word `f X S` must have produced a warning
        assert!(cat
            .warnings()
            .iter()
            .any(|w| w.contains("(2,2)") && w.contains("does not parse")));
        // exactly one (2,2) class had to be regenerated
        assert_eq!(classes.iter().filter(|c| c.regenerated).count(), 1);
    }

    #[test]
    fn expanded_tests_match_transformed_fiducials() {
        let cat = Catalogue::global();
        for class in cat.classes().iter().filter(|c| c.label.n <= 2) {
            let row = &cat.rows()[class.row_index];
            let expect = transform_test(&class.g, &row.test);
            assert_eq!(class.test.canonical_key(), expect.canonical_key());
            class.certify().unwrap();
        }
    }

    #[test]
    fn transform_round_trip_under_involution() {
        let cat = Catalogue::global();
        let row = cat.row(RowLabel::parse("(2,2)").unwrap()).unwrap();
        let s = SymmetryElem::parse("S").unwrap();
        let round = transform_test(&s, &transform_test(&s, &row.test));
        assert_eq!(round.canonical_key(), row.test.canonical_key());
    }
}
