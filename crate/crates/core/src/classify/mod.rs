//! The classification pipeline: resolve the nine marked-edge cases, decide
//! which normal translation subgroups give connected surfaces, and
//! assemble the genus table.

pub mod output;
mod tables;

pub use tables::{expected_genus_columns, Case, Constraint, EdgeLabel, CASES};

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactmath::SubgroupHNF;
use crate::periodicgraph::{
    cycle_image_lattice, edge_orbit_graph, lift_connected, marked_edges, MarkedClass, PeriodicGraph,
};
use crate::spacegroup::{make_group, SpaceGroup, SpaceGroupName};
use crate::sublattices::{forms, normal_translation_subgroups, Form, LatticeFamily};

/// Largest `n` (and `m`, for hexagonal rows) checked by direct
/// instantiation when confirming an inferred constraint.
pub const VERIFY_N: u64 = 36;
pub const VERIFY_M: u64 = 6;

/// A marked edge with its quotient graph and labelled case.
#[derive(Clone, Debug)]
pub struct CaseGraph {
    pub case: Case,
    pub group: SpaceGroup,
    pub class: MarkedClass,
    pub graph: PeriodicGraph,
    pub cycle_image: SubgroupHNF,
}

/// Marked edges of `g`, labelled by matching their cycle images against
/// the reference table.
pub fn resolve_group(g: &SpaceGroup) -> Result<Vec<CaseGraph>> {
    marked_edges(g)?
        .into_iter()
        .map(|class| {
            let graph = edge_orbit_graph(g, &class.representative);
            let cycle_image = cycle_image_lattice(&graph)?;
            let case = CASES
                .iter()
                .find(|c| c.group == g.name && c.expected_cycle_image() == cycle_image)
                .copied()
                .ok_or_else(|| Error::UnknownEdge(format!("{} edge with cycle image {}", g.name, cycle_image)))?;
            Ok(CaseGraph { case, group: g.clone(), class, graph, cycle_image })
        })
        .collect()
}

pub fn resolve_case(case: Case) -> Result<CaseGraph> {
    let g = make_group(case.group)?;
    resolve_group(&g)?.into_iter().find(|cg| cg.case == case).ok_or_else(|| Error::UnknownEdge(case.to_string()))
}

/// `g - 1` for a form, in the printed style: coefficients 2, 4, 8 times a
/// cube, or `n^2`, `3n^2`.
pub fn genus_form(form: &Form) -> String {
    let k = form.pi1_coeff / 12;
    if form.tag.is_hex() {
        return if k == 1 { "n^2".to_string() } else { format!("{k}n^2") };
    }
    for c in [2u64, 4, 8] {
        for j in 1u64..=4 {
            if c * j.pow(3) == k {
                return if j == 1 { format!("{c}n^3") } else { format!("{c}({j}n)^3") };
            }
        }
    }
    format!("{k}n^3")
}

/// Row of the genus table a form belongs to.
fn form_row(form: &Form) -> u64 {
    let k = form.pi1_coeff / 12;
    if form.tag.is_hex() {
        return k;
    }
    [2u64, 4, 8].into_iter().find(|c| (1..=4u64).any(|j| c * j.pow(3) == k)).unwrap_or(k)
}

fn annotated(form: &Form, c: Constraint) -> String {
    match c {
        Constraint::NotDivisibleBy(_) => format!("{}({})", genus_form(form), c.annotation()),
        _ => genus_form(form),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassificationRow {
    pub group: SpaceGroupName,
    pub edge_label: EdgeLabel,
    pub column: usize,
    pub family: LatticeFamily,
    /// Normal-subgroup row label, like `T_{4n^3}`.
    pub form: String,
    /// `g - 1` as printed in the genus table.
    pub genus_form: String,
    pub n: u64,
    pub m: Option<u64>,
    pub constraint: Constraint,
    pub lattice_index: u64,
    pub group_order: u64,
    pub genus: u64,
    pub knotted: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct FormResult {
    pub form: Form,
    pub label: String,
    pub genus_form: String,
    pub constraint: Constraint,
}

#[derive(Clone, Debug, Serialize)]
pub struct CaseClassification {
    pub case: Case,
    pub max_index: u64,
    pub forms: Vec<FormResult>,
    pub rows: Vec<ClassificationRow>,
    /// Invariant sublattices within the bound whose lift is disconnected.
    pub rejected: usize,
}

fn verify_constraint(cg: &CaseGraph, form: &Form, c: Constraint) -> bool {
    let max_m = if form.tag.is_hex() { VERIFY_M } else { 1 };
    (1..=VERIFY_N).all(|n| {
        (1..=max_m).all(|m| {
            let t = form.family(n, m).instantiate();
            lift_connected(&cg.graph, &t).map(|ok| ok == c.holds(n, m)).unwrap_or(false)
        })
    })
}

/// First candidate constraint consistent with the observed verdicts and
/// with direct instantiation for `n <= VERIFY_N`.
///
/// Direct instantiation settles the divisibility candidates: the lattices
/// of a row are `n` times a fixed lattice `L`, and `C + nL` depends only on
/// `n` modulo the exponent of `T0 / C` when the cycle image `C` has full
/// rank. The exponents met here divide 6, so every residue class occurs
/// many times below `VERIFY_N`. For the rank-two hexagonal image the join
/// reaches `T0` exactly when the vertical generator `m t_z` does.
pub fn infer_constraint(cg: &CaseGraph, form: &Form, observed: &[(u64, u64, bool)]) -> Result<Constraint> {
    Constraint::CANDIDATES
        .into_iter()
        .filter(|c| form.tag.is_hex() || *c != Constraint::MEqualsOne)
        .find(|c| observed.iter().all(|&(n, m, ok)| c.holds(n, m) == ok) && verify_constraint(cg, form, *c))
        .ok_or_else(|| Error::ConstraintUnresolved(format!("{} {}", cg.case, form.label())))
}

pub fn classify_graph(cg: &CaseGraph, max_index: u64) -> Result<CaseClassification> {
    let g = &cg.group;
    let group_forms = forms(g.name);
    let subs = normal_translation_subgroups(g, max_index)?;
    let mut observed: Vec<Vec<(u64, u64, bool)>> = vec![Vec::new(); group_forms.len()];
    let mut accepted = Vec::new();
    let mut rejected = 0;
    for s in &subs {
        let (k, (n, m)) = group_forms
            .iter()
            .enumerate()
            .find_map(|(k, f)| f.params_of(&s.family).map(|p| (k, p)))
            .ok_or_else(|| Error::UnmatchedLattice(s.lattice.to_string()))?;
        let ok = lift_connected(&cg.graph, &s.lattice)?;
        observed[k].push((n, m, ok));
        if ok {
            accepted.push((k, n, s));
        } else {
            rejected += 1;
        }
    }
    let form_results: Vec<FormResult> = group_forms
        .iter()
        .zip(&observed)
        .map(|(f, obs)| {
            Ok(FormResult {
                form: *f,
                label: f.label(),
                genus_form: genus_form(f),
                constraint: infer_constraint(cg, f, obs)?,
            })
        })
        .collect::<Result<_>>()?;
    let rows = accepted
        .into_iter()
        .map(|(k, n, s)| {
            let f = &form_results[k];
            ClassificationRow {
                group: g.name,
                edge_label: cg.case.label,
                column: cg.case.column(),
                family: s.family,
                form: f.label.clone(),
                genus_form: genus_form(&f.form),
                n,
                m: s.family.m,
                constraint: f.constraint,
                lattice_index: s.index,
                group_order: s.pi1_index,
                genus: s.pi1_index / 12 + 1,
                knotted: cg.case.knotted(),
            }
        })
        .collect();
    Ok(CaseClassification { case: cg.case, max_index, forms: form_results, rows, rejected })
}

/// Connected covers of one case with lattice index (in `T0`) at most
/// `max_index`.
pub fn classify_case(group: SpaceGroupName, edge: EdgeLabel, max_index: u64) -> Result<CaseClassification> {
    let case = Case::new(group, edge)?;
    classify_graph(&resolve_case(case)?, max_index)
}

/// All nine cases, resolved once per group.
pub fn resolve_all() -> Result<Vec<CaseGraph>> {
    let mut by_case: BTreeMap<usize, CaseGraph> = BTreeMap::new();
    let groups: Vec<Result<Vec<CaseGraph>>> =
        SpaceGroupName::ALL.par_iter().map(|&name| resolve_group(&make_group(name)?)).collect();
    for cgs in groups {
        for cg in cgs? {
            by_case.insert(cg.case.column(), cg);
        }
    }
    if by_case.len() != CASES.len() {
        return Err(Error::UnknownEdge("missing marked-edge case".to_string()));
    }
    Ok(by_case.into_values().collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GenusCell {
    /// `g - 1` with its divisibility condition, like `2n^3(2∤n)`.
    pub genus_minus_one_form: String,
    pub column: usize,
    pub knotted: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Action {
    pub column: usize,
    pub case: Case,
    pub form: String,
    pub n: u64,
    pub m: Option<u64>,
    pub knotted: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GenusEntry {
    pub genus: u64,
    pub order: u64,
    pub actions: Vec<Action>,
    pub unknotted: usize,
    pub knotted: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct GenusTable {
    pub max_genus: u64,
    /// Cells per column, in row order.
    pub columns: Vec<Vec<GenusCell>>,
    pub genera: Vec<GenusEntry>,
}

impl GenusTable {
    pub fn entry(&self, genus: u64) -> Option<&GenusEntry> {
        self.genera.iter().find(|e| e.genus == genus)
    }

    /// Distinct forms of `g - 1` across all cells, ignoring conditions and
    /// writing `c(jn)^3` as `cn^3`.
    pub fn base_forms(&self) -> Vec<String> {
        let mut out: Vec<String> = self
            .columns
            .iter()
            .flatten()
            .map(|c| {
                let f = c.genus_minus_one_form.split('(').next().unwrap_or("").to_string();
                if f.ends_with("n^3") || f.ends_with("n^2") {
                    f
                } else {
                    format!("{f}n^3")
                }
            })
            .collect();
        out.sort();
        out.dedup();
        out
    }

    pub fn column_strings(&self) -> Vec<Vec<String>> {
        self.columns.iter().map(|col| col.iter().map(|c| c.genus_minus_one_form.clone()).collect()).collect()
    }
}

/// Actions with maximal order on `(T^3, Sigma_g)` for `2 <= g <= max_genus`.
pub fn genus_table(max_genus: u64) -> Result<GenusTable> {
    let cases = resolve_all()?;
    let per_case: Vec<Result<CaseClassification>> = cases
        .par_iter()
        .map(|cg| {
            let bound = (12 * max_genus.saturating_sub(1)).div_ceil(cg.group.point_order as u64);
            classify_graph(cg, bound.max(1))
        })
        .collect();
    let mut columns = Vec::new();
    let mut genera: BTreeMap<u64, Vec<Action>> = BTreeMap::new();
    for cls in per_case {
        let cls = cls?;
        let mut cells: Vec<(u64, GenusCell)> = cls
            .forms
            .iter()
            .filter(|f| f.constraint != Constraint::Never)
            .map(|f| {
                let cell = GenusCell {
                    genus_minus_one_form: annotated(&f.form, f.constraint),
                    column: cls.case.column(),
                    knotted: cls.case.knotted(),
                };
                (form_row(&f.form), cell)
            })
            .collect();
        cells.sort_by_key(|(r, _)| *r);
        columns.push(cells.into_iter().map(|(_, c)| c).collect());
        for r in cls.rows.iter().filter(|r| r.genus <= max_genus) {
            genera.entry(r.genus).or_default().push(Action {
                column: r.column,
                case: cls.case,
                form: r.genus_form.clone(),
                n: r.n,
                m: r.m,
                knotted: r.knotted,
            });
        }
    }
    let genera = genera
        .into_iter()
        .map(|(genus, mut actions)| {
            actions.sort_by_key(|a| (a.column, a.n));
            let knotted = actions.iter().filter(|a| a.knotted).count();
            GenusEntry { genus, order: 12 * (genus - 1), unknotted: actions.len() - knotted, knotted, actions }
        })
        .collect();
    Ok(GenusTable { max_genus, columns, genera })
}

#[derive(Clone, Debug, Serialize)]
pub struct CaseCheck {
    pub case: Case,
    pub connected: bool,
    pub cycle_image: Option<String>,
    pub expected: String,
    pub lattice_match: bool,
    pub constraints: Vec<String>,
    pub expected_constraints: Vec<String>,
    pub constraints_match: bool,
    pub error: Option<String>,
}

impl CaseCheck {
    pub fn pass(&self) -> bool {
        self.error.is_none() && self.connected && self.lattice_match && self.constraints_match
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub max_index: u64,
    pub marked_edges: Vec<(SpaceGroupName, usize)>,
    pub cases: Vec<CaseCheck>,
    pub pass: bool,
}

fn check_case(case: Case, resolved: Option<&CaseGraph>, max_index: u64) -> CaseCheck {
    let expected = case.expected_cycle_image().to_string();
    let expected_constraints: Vec<String> = case.expected_constraints().iter().map(|c| c.to_string()).collect();
    let mut check = CaseCheck {
        case,
        connected: false,
        cycle_image: None,
        expected,
        lattice_match: false,
        constraints: Vec::new(),
        expected_constraints,
        constraints_match: false,
        error: None,
    };
    let Some(cg) = resolved else {
        check.error = Some("case not found among marked edges".to_string());
        return check;
    };
    check.connected = cg.graph.is_connected();
    check.cycle_image = Some(cg.cycle_image.to_string());
    check.lattice_match = cg.cycle_image == case.expected_cycle_image();
    match classify_graph(cg, max_index) {
        Ok(cls) => {
            check.constraints = cls.forms.iter().map(|f| f.constraint.to_string()).collect();
            check.constraints_match = check.constraints == check.expected_constraints;
        }
        Err(e) => check.error = Some(e.to_string()),
    }
    check
}

/// Connectivity, cycle images and constraints for all nine cases. Errors
/// are recorded in the report rather than returned.
pub fn verify_claims(max_index: u64) -> VerifyReport {
    let per_group: Vec<(SpaceGroupName, Result<Vec<CaseGraph>>)> =
        SpaceGroupName::ALL.par_iter().map(|&name| (name, make_group(name).and_then(|g| resolve_group(&g)))).collect();
    let mut marked = Vec::new();
    let mut resolved: Vec<CaseGraph> = Vec::new();
    let mut group_errors: BTreeMap<SpaceGroupName, String> = BTreeMap::new();
    for (name, r) in per_group {
        match r {
            Ok(cgs) => {
                marked.push((name, cgs.len()));
                resolved.extend(cgs);
            }
            Err(e) => {
                marked.push((name, 0));
                group_errors.insert(name, e.to_string());
            }
        }
    }
    let cases: Vec<CaseCheck> = CASES
        .par_iter()
        .map(|&case| {
            let mut c = check_case(case, resolved.iter().find(|cg| cg.case == case), max_index);
            if let Some(e) = group_errors.get(&case.group) {
                c.error = Some(e.clone());
            }
            c
        })
        .collect();
    let pass = cases.iter().all(CaseCheck::pass);
    VerifyReport { max_index, marked_edges: marked, cases, pass }
}
