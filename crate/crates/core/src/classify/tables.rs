//! Reference data for the nine marked-edge cases: expected cycle-image
//! lattices, expected connectivity constraints, and knottedness.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactmath::rational::rat;
use crate::exactmath::{SubgroupHNF, Vec3};
use crate::spacegroup::SpaceGroupName;
use crate::sublattices::{FamilyTag, LatticeFamily};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeLabel {
    Alpha,
    Beta,
    Gamma,
}

impl EdgeLabel {
    pub fn as_str(self) -> &'static str {
        match self {
            EdgeLabel::Alpha => "alpha",
            EdgeLabel::Beta => "beta",
            EdgeLabel::Gamma => "gamma",
        }
    }
}

impl fmt::Display for EdgeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for EdgeLabel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "alpha" | "a" | "α" => Ok(EdgeLabel::Alpha),
            "beta" | "b" | "β" => Ok(EdgeLabel::Beta),
            "gamma" | "g" | "γ" => Ok(EdgeLabel::Gamma),
            _ => Err(Error::UnknownEdge(s.to_string())),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Case {
    pub group: SpaceGroupName,
    pub label: EdgeLabel,
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "([{}],{})", self.group, self.label)
    }
}

const fn case(group: SpaceGroupName, label: EdgeLabel) -> Case {
    Case { group, label }
}

/// The nine cases, in table column order.
pub const CASES: [Case; 9] = [
    case(SpaceGroupName::P432, EdgeLabel::Alpha),
    case(SpaceGroupName::F4_132, EdgeLabel::Alpha),
    case(SpaceGroupName::I4_132, EdgeLabel::Alpha),
    case(SpaceGroupName::I432, EdgeLabel::Beta),
    case(SpaceGroupName::P4_232, EdgeLabel::Beta),
    case(SpaceGroupName::P4_232, EdgeLabel::Gamma),
    case(SpaceGroupName::I432, EdgeLabel::Gamma),
    case(SpaceGroupName::I4_132, EdgeLabel::Beta),
    case(SpaceGroupName::P622, EdgeLabel::Beta),
];

impl Case {
    pub fn new(group: SpaceGroupName, label: EdgeLabel) -> Result<Case> {
        let c = Case { group, label };
        if CASES.contains(&c) {
            Ok(c)
        } else {
            Err(Error::UnknownEdge(format!("{group} {label}")))
        }
    }

    /// 1-based column in the genus table.
    pub fn column(&self) -> usize {
        CASES.iter().position(|c| c == self).expect("known case") + 1
    }

    /// Only the alpha edges give unknotted (Heegaard) surfaces.
    pub fn knotted(&self) -> bool {
        self.label != EdgeLabel::Alpha
    }

    /// Expected image of the edge graph's fundamental group in `T0`.
    pub fn expected_cycle_image(&self) -> SubgroupHNF {
        use EdgeLabel::*;
        use SpaceGroupName::*;
        let cubic = |tag, n| LatticeFamily::cubic(tag, n).instantiate();
        match (self.group, self.label) {
            (P432, Alpha) | (I432, Beta) => cubic(FamilyTag::CubicPrimitive, 1),
            (F4_132, Alpha) | (P4_232, Beta) => cubic(FamilyTag::CubicFace, 1),
            (I4_132, Alpha) | (I432, Gamma) | (P4_232, Gamma) => cubic(FamilyTag::CubicBody, 2),
            (I4_132, Beta) => cubic(FamilyTag::CubicBody, 6),
            (P622, _) => SubgroupHNF::from_rational(&[
                Vec3::new(rat(1, 1), rat(0, 1), rat(0, 1)),
                Vec3::new(rat(0, 1), rat(1, 1), rat(0, 1)),
            ]),
            _ => unreachable!("not one of the nine cases"),
        }
    }

    /// Expected constraint for each row of `sublattices::forms(group)`.
    pub fn expected_constraints(&self) -> Vec<Constraint> {
        use Constraint::*;
        use EdgeLabel::*;
        use SpaceGroupName::*;
        let odd = NotDivisibleBy(2);
        match (self.group, self.label) {
            (_, Alpha) => vec![Always, Always, Always],
            (I432, _) => vec![odd, Never, Never],
            (P4_232, Beta) => vec![odd, Never, odd],
            (P4_232, Gamma) => vec![odd, odd, Never],
            (I4_132, Beta) => vec![NotDivisibleBy(3); 3],
            (P622, Beta) => vec![MEqualsOne, MEqualsOne],
            _ => unreachable!("not one of the nine cases"),
        }
    }
}

/// Condition on the form parameters `(n, m)` for the lifted edge to be
/// connected.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Constraint {
    Always,
    NotDivisibleBy(u64),
    MEqualsOne,
    Never,
}

impl Constraint {
    /// Candidates tried by inference, simplest first.
    pub const CANDIDATES: [Constraint; 5] = [
        Constraint::Always,
        Constraint::NotDivisibleBy(2),
        Constraint::NotDivisibleBy(3),
        Constraint::MEqualsOne,
        Constraint::Never,
    ];

    pub fn holds(&self, n: u64, m: u64) -> bool {
        match self {
            Constraint::Always => true,
            Constraint::NotDivisibleBy(p) => n % p != 0,
            Constraint::MEqualsOne => m == 1,
            Constraint::Never => false,
        }
    }

    /// Annotation as printed next to a form, empty when unconstrained.
    pub fn annotation(&self) -> String {
        match self {
            Constraint::Always => String::new(),
            Constraint::NotDivisibleBy(p) => format!("{p}∤n"),
            Constraint::MEqualsOne => "m=1".to_string(),
            Constraint::Never => "never".to_string(),
        }
    }
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Constraint::Always => f.write_str("none"),
            other => f.write_str(&other.annotation()),
        }
    }
}

/// The genus table as printed: per column, the forms of `g - 1`.
pub fn expected_genus_columns() -> Vec<Vec<&'static str>> {
    vec![
        vec!["2n^3", "4n^3", "8n^3"],
        vec!["2n^3", "4(2n)^3", "8n^3"],
        vec!["2n^3", "4n^3", "8n^3"],
        vec!["2n^3(2∤n)"],
        vec!["2n^3(2∤n)", "8n^3(2∤n)"],
        vec!["2n^3(2∤n)", "4n^3(2∤n)"],
        vec!["2n^3(2∤n)"],
        vec!["2n^3(3∤n)", "4n^3(3∤n)", "8n^3(3∤n)"],
        vec!["n^2", "3n^2"],
    ]
}
