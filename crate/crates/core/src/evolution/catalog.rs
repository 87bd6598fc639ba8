use std::fmt;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Severity {
    Red,
    Orange,
}

impl fmt::Display for Severity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Severity::Red => "Red",
            Severity::Orange => "Orange",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum IssueCode {
    #[serde(rename = "OI.Ev1")]
    Ev1,
    #[serde(rename = "OI.Ev2")]
    Ev2,
    #[serde(rename = "OI.Ev3")]
    Ev3,
    #[serde(rename = "OI.Ev4")]
    Ev4,
    #[serde(rename = "OI.Ev5")]
    Ev5,
    #[serde(rename = "OI.Ev6")]
    Ev6,
    #[serde(rename = "OI.Ev7")]
    Ev7,
    #[serde(rename = "OI.Ev8")]
    Ev8,
}

/// One row of the open-issue catalog.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CatalogEntry {
    pub code: IssueCode,
    pub verification: &'static str,
    pub problem: &'static str,
    pub severity: Severity,
    pub action: &'static str,
}

pub const CATALOG: [CatalogEntry; 8] = [
    CatalogEntry {
        code: IssueCode::Ev1,
        verification: "Evolution rule not in conflict with itself",
        problem: "The rule may be applied multiple times",
        severity: Severity::Red,
        action: "Review the evolution rule (adding a NAC or an item to be deleted).",
    },
    CatalogEntry {
        code: IssueCode::Ev2,
        verification: "Evolution rule dependent on any evolution rule",
        problem: "Evolution may not terminate",
        severity: Severity::Red,
        action: "Review the rules.",
    },
    CatalogEntry {
        code: IssueCode::Ev3,
        verification: "Evolution rule in conflict with other evolution rule",
        problem: "May lead to non-deterministic evolution",
        severity: Severity::Red,
        action: "Check LHSs of conflicting evolution rules to make sure that they are not applicable to the same step rule",
    },
    CatalogEntry {
        code: IssueCode::Ev4,
        verification: "Gluing problem occured",
        problem: "An evolution is not applicable to some step rule due to extra context",
        severity: Severity::Orange,
        action: "Check whether the evolution should be applicable to this step rule. If not, nothing has to be done. \
                 If yes, create a new evolution rule with the extra context, if such rule does not exist.",
    },
    CatalogEntry {
        code: IssueCode::Ev5,
        verification: "NAC-gluing problem occured",
        problem: "An evolution would make the NAC of a step rule useless",
        severity: Severity::Orange,
        action: "Check the NAC: if it makes sense that it become useless, delete this NAC. Otherwise, review the evolution rule.",
    },
    CatalogEntry {
        code: IssueCode::Ev6,
        verification: "Undesired increase of (step) rule applicability",
        problem: "Delete²-delete or Delete²-preserve situation occurred",
        severity: Severity::Orange,
        action: "Check the items that will be deleted from the step rule by the evolution rule (items deleted in LHS(L_Ev)).",
    },
    CatalogEntry {
        code: IssueCode::Ev7,
        verification: "Undesired restriction of (step) rule applicability",
        problem: "Create²-delete or Create²-preserve situation occurred",
        severity: Severity::Orange,
        action: "Check the items that will be inserted in the LHS of the step rule by the evolution rule (items created in LHS(R_Ev)).",
    },
    CatalogEntry {
        code: IssueCode::Ev8,
        verification: "Undesired modification of (step) rule behavior",
        problem: "Create²-create or Delete²-create situation occurred",
        severity: Severity::Orange,
        action: "Check the items that are created in/deleted from the RHS of the step rule by the evolution rule \
                 (items created in/deleted from RHS(R_Ev)).",
    },
];

impl IssueCode {
    pub const ALL: [IssueCode; 8] = [
        IssueCode::Ev1,
        IssueCode::Ev2,
        IssueCode::Ev3,
        IssueCode::Ev4,
        IssueCode::Ev5,
        IssueCode::Ev6,
        IssueCode::Ev7,
        IssueCode::Ev8,
    ];

    pub fn entry(self) -> &'static CatalogEntry {
        &CATALOG[self as usize]
    }

    pub fn severity(self) -> Severity {
        self.entry().severity
    }

    pub fn label(self) -> &'static str {
        ["OI.Ev1", "OI.Ev2", "OI.Ev3", "OI.Ev4", "OI.Ev5", "OI.Ev6", "OI.Ev7", "OI.Ev8"][self as usize]
    }
}

impl fmt::Display for IssueCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// A raised open issue.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct OpenIssue {
    pub code: IssueCode,
    pub severity: Severity,
    /// Rule names involved, evolution rule first.
    pub subjects: Vec<String>,
    pub problem: String,
    pub action: String,
}

impl OpenIssue {
    pub fn new(code: IssueCode, subjects: Vec<String>) -> Self {
        let e = code.entry();
        OpenIssue {
            code,
            severity: e.severity,
            subjects,
            problem: e.problem.to_owned(),
            action: e.action.to_owned(),
        }
    }
}
