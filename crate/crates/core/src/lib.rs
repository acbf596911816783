//! Exact computation of the three-parameter PASEP partition function by
//! several independent routes, with the bijections and specializations that
//! tie them together.
//!
//! Polynomials live in `Z[a, b, y, q]` where `a` and `b` are the inverse
//! boundary rates.

use std::fmt;
use std::str::FromStr;

pub mod ansatz;
pub mod bijections;
pub mod formulas;
pub mod paths;
pub mod perms;
pub mod polyring;
pub mod qtools;
pub mod tableaux;
pub mod verify;

use polyring::MPoly;

/// The independent routes to the partition function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    Closed,
    Matrix,
    Normal,
    Hatted,
    PermWex,
    PermAsc,
    Tableaux,
    Histories,
    Paths,
}

impl Method {
    pub const ALL: [Method; 9] = [
        Method::Closed,
        Method::Matrix,
        Method::Normal,
        Method::Hatted,
        Method::PermWex,
        Method::PermAsc,
        Method::Tableaux,
        Method::Histories,
        Method::Paths,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Closed => "closed",
            Method::Matrix => "matrix",
            Method::Normal => "normal",
            Method::Hatted => "hatted",
            Method::PermWex => "perm-wex",
            Method::PermAsc => "perm-asc",
            Method::Tableaux => "tableaux",
            Method::Histories => "histories",
            Method::Paths => "paths",
        }
    }

    /// Methods whose cost grows like `(N+1)!`.
    pub fn is_enumerative(self) -> bool {
        matches!(
            self,
            Method::PermWex | Method::PermAsc | Method::Tableaux | Method::Histories
        )
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| format!("unknown method {s:?}"))
    }
}

/// The partition function for `N` sites by the chosen route.
pub fn zn(method: Method, n: usize) -> MPoly {
    match method {
        Method::Closed => formulas::zn_closed(n),
        Method::Matrix => ansatz::zn_matrix(n),
        Method::Normal => ansatz::zn_normal(n),
        Method::Hatted => ansatz::zn_hatted(n),
        Method::PermWex => perms::zn_perm_wexcr(n),
        Method::PermAsc => perms::zn_perm_asc312(n),
        Method::Tableaux => tableaux::zn_tableaux(n),
        Method::Histories => paths::zn_histories(n),
        Method::Paths => paths::zn_paths(n),
    }
}
