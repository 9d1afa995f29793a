//! Theorem suites: each registered statement is checked over a grid of
//! parameters, one verdict per instance.
//!
//! A grid is a list of `key=value` tokens separated by spaces or `;`. A
//! value is a list of items separated by `|`, and an integer item may be an
//! inclusive range `a..b`. Keys left out take the defaults listed in
//! [`THEOREMS`].

mod finite;
mod grid;
mod table;
mod words;

use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;

use crate::group::GroupError;
use crate::groupspec::SpecError;
use crate::hom::HomError;
use crate::tss::TssError;
use crate::word::WordError;

pub use finite::odd_order_corpus;
pub use grid::Grid;
pub use table::{summary_table, TableRow};
pub use words::{free_product_check, FreeProductReport};

#[derive(Debug, thiserror::Error)]
pub enum SuiteError {
    #[error("unknown theorem {0:?}; run `tsslab verify --list` for the registered ids")]
    UnknownTheorem(String),
    #[error("grid key {key:?}: {message}")]
    Grid { key: String, message: String },
    #[error("{instance}: {message}")]
    Budget { instance: String, message: String },
    #[error(transparent)]
    Spec(#[from] SpecError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Tss(#[from] TssError),
    #[error(transparent)]
    Hom(#[from] HomError),
    #[error(transparent)]
    Word(#[from] WordError),
}

impl SuiteError {
    pub(crate) fn grid(key: &str, message: impl Into<String>) -> Self {
        SuiteError::Grid {
            key: key.to_string(),
            message: message.into(),
        }
    }

    /// Moves a budget overrun out of the generic error so callers can tell
    /// it apart.
    pub(crate) fn from_hom(instance: &str, e: HomError) -> Self {
        match e {
            HomError::BudgetExceeded { .. } => SuiteError::Budget {
                instance: instance.to_string(),
                message: e.to_string(),
            },
            e => SuiteError::Hom(e),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "snake_case", tag = "verdict")]
pub enum Verdict {
    Pass,
    Fail {
        counterexample: Value,
    },
    NotApplicable {
        reason: String,
    },
    /// A bounded search ran to completion without finding a witness.
    Exhausted {
        bound: u64,
    },
}

impl Verdict {
    pub fn is_fail(&self) -> bool {
        matches!(self, Verdict::Fail { .. })
    }

    pub fn name(&self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail { .. } => "fail",
            Verdict::NotApplicable { .. } => "not_applicable",
            Verdict::Exhausted { .. } => "exhausted",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct InstanceResult {
    pub instance: String,
    #[serde(flatten)]
    pub verdict: Verdict,
    pub detail: Value,
    /// Re-runs this instance alone.
    pub command: String,
    pub elapsed_ms: u128,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteResult {
    pub format: u32,
    pub theorem: String,
    pub statement: String,
    pub grid: String,
    pub instances: Vec<InstanceResult>,
    pub elapsed_ms: u128,
    /// Evidence files written by the caller.
    pub artifacts: Vec<String>,
}

impl SuiteResult {
    pub fn failures(&self) -> impl Iterator<Item = &InstanceResult> {
        self.instances.iter().filter(|r| r.verdict.is_fail())
    }

    pub fn passed(&self) -> bool {
        self.failures().next().is_none()
    }

    pub fn count(&self, verdict: &str) -> usize {
        self.instances
            .iter()
            .filter(|r| r.verdict.name() == verdict)
            .count()
    }
}

pub struct TheoremInfo {
    pub id: &'static str,
    pub statement: &'static str,
    /// Grid keys with their defaults.
    pub keys: &'static [(&'static str, &'static str)],
}

const GROUP_ROSTER: &str = "dihedral:3|dihedral:4|dihedral:6|dihedral:8|sym:3|sym:4|\
semidirect:3,6,2|semidirect:5,20,2|semidirect:7,14,6|product:dihedral:4,sym:3|product:sym:4,cyclic:5";

const PRODUCT_FACTORS: &str = "cyclic:5|cyclic:6|dihedral:3|dihedral:4|sym:3|sym:4";

pub const THEOREMS: &[TheoremInfo] = &[
    TheoremInfo {
        id: "fundamental-lemma",
        statement: "the image of a totally symmetric set under a homomorphism is a totally symmetric set of the same size or a singleton",
        keys: &[
            (
                "fixtures",
                "identity:dihedral:4|identity:sym:3|identity:sym:4|identity:semidirect:5,20,2|\
quotient-d8|quotient-s4|homs:sym:4>sym:3|homs:dihedral:4>dihedral:4|braid:4|braid:6|\
braid-homs:4>sym:3|braid-homs:5>semidirect:7,3,2",
            ),
            ("budget", "10000000"),
        ],
    },
    TheoremInfo {
        id: "abelian",
        statement: "S(G) = 1 for abelian G",
        keys: &[("n", "1..50"), ("gate", "on")],
    },
    TheoremInfo {
        id: "free-group",
        statement: "S(F_2) = 1: no reduced word is conjugate to its inverse and no size-2 set is totally symmetric",
        keys: &[("max-len", "8"), ("samples", "0"), ("sample-len", "24"), ("seed", "0")],
    },
    TheoremInfo {
        id: "dihedral",
        statement: "S(D_2n) = 2 for n >= 3; the size-2 sets are {r^i, r^-i} and, when 4 | n, {sr^i, sr^(i+n/2)}",
        keys: &[("n", "3..12")],
    },
    TheoremInfo {
        id: "baumslag-solitar",
        statement: "S(BS(1,-1)) = 2 with sets {a^x b^2m, a^-x b^2m}; S(BS(1,n)) = 1 for n != 1, -1",
        keys: &[("n", "-3|-2|-1|2|3"), ("radius", "4"), ("bound", "6")],
    },
    TheoremInfo {
        id: "semidirect",
        statement: "S(Z_p x| Z_m) = 2 for p prime with p | m when -1 is a power of the multiplier k",
        keys: &[("params", "3,6,2|5,20,2|7,14,6|3,12,2|5,40,2|7,42,3|11,22,10|13,26,12|7,21,2")],
    },
    TheoremInfo {
        id: "direct-product",
        statement: "S(G x H) = max(S(G), S(H)), and in every totally symmetric set the first coordinates are all equal or all distinct, and likewise the second",
        keys: &[("factors", PRODUCT_FACTORS), ("max-order", "600")],
    },
    TheoremInfo {
        id: "distinct-coordinates",
        statement: "a totally symmetric set of G x H with distinct coordinates in both factors has size at most min(S(G), S(H))",
        keys: &[("factors", PRODUCT_FACTORS), ("max-order", "600")],
    },
    TheoremInfo {
        id: "free-product",
        statement: "S(G * H) = max(S(G), S(H)), every totally symmetric set being a conjugate of one in a factor",
        keys: &[("pairs", "cyclic:3*cyclic:3|dihedral:4*sym:3"), ("max-len", "4"), ("max-sets", "1000000")],
    },
    TheoremInfo {
        id: "inverse-pair",
        statement: "a totally symmetric set containing some x and x^-1 != x is exactly {x, x^-1}",
        keys: &[("groups", GROUP_ROSTER)],
    },
    TheoremInfo {
        id: "stabilizer-ses",
        statement: "1 -> kernel -> Stab(S) -> Sym(S) -> 1 is exact, so |S|! divides |Stab(S)|, which divides |G|",
        keys: &[("groups", GROUP_ROSTER)],
    },
    TheoremInfo {
        id: "odd-order",
        statement: "S(G) = 1 for G of odd order",
        keys: &[("max-order", "200"), ("gate", "on")],
    },
    TheoremInfo {
        id: "solvable",
        statement: "S(G) <= 4 for solvable G",
        keys: &[(
            "groups",
            "sym:3|sym:4|sym:5|dihedral:6|semidirect:7,42,3|product:sym:4,sym:3|product:sym:4,cyclic:2|product:dihedral:4,dihedral:4",
        )],
    },
    TheoremInfo {
        id: "non-injective",
        statement: "no homomorphism G -> H is injective when S(G) > S(H)",
        keys: &[
            ("pairs", "sym:4>dihedral:12|sym:4>product:sym:3,cyclic:4|dihedral:4>cyclic:8|dihedral:3>cyclic:6|sym:3>sym:4"),
            ("budget", "10000000"),
        ],
    },
    TheoremInfo {
        id: "braid-cyclic",
        statement: "every homomorphism B_n -> G has cyclic image when n >= 5 and S(G) < floor(n/2)",
        keys: &[("n", "5"), ("targets", "semidirect:7,3,2|cyclic:6"), ("budget", "100000000")],
    },
];

pub fn theorem(id: &str) -> Result<&'static TheoremInfo, SuiteError> {
    THEOREMS
        .iter()
        .find(|t| t.id == id)
        .ok_or_else(|| SuiteError::UnknownTheorem(id.to_string()))
}

/// Verdict plus free-form evidence for one instance.
pub(crate) struct Outcome {
    pub verdict: Verdict,
    pub detail: Value,
}

impl Outcome {
    pub fn new(verdict: Verdict, detail: Value) -> Self {
        Outcome { verdict, detail }
    }

    /// Pass when `ok`, otherwise fail with `counterexample`.
    pub fn check(ok: bool, detail: Value, counterexample: impl FnOnce() -> Value) -> Self {
        let verdict = if ok {
            Verdict::Pass
        } else {
            Verdict::Fail {
                counterexample: counterexample(),
            }
        };
        Outcome { verdict, detail }
    }
}

type Runner = Box<dyn Fn() -> Result<Outcome, SuiteError> + Send + Sync>;

/// One grid instance: its name, the grid that selects it alone, and the
/// check to run.
pub(crate) struct Job {
    pub name: String,
    pub grid: Grid,
    pub run: Runner,
}

impl Job {
    pub fn new(
        name: impl Into<String>,
        grid: Grid,
        run: impl Fn() -> Result<Outcome, SuiteError> + Send + Sync + 'static,
    ) -> Self {
        Job {
            name: name.into(),
            grid,
            run: Box::new(run),
        }
    }
}

/// Resolved grid values for one theorem.
pub(crate) struct Params<'a> {
    info: &'static TheoremInfo,
    grid: &'a Grid,
}

impl Params<'_> {
    fn raw(&self, key: &str) -> &str {
        self.grid.get(key).unwrap_or_else(|| {
            self.info
                .keys
                .iter()
                .find(|(k, _)| *k == key)
                .map(|(_, v)| *v)
                .expect("registered key")
        })
    }

    pub fn items(&self, key: &str) -> Vec<String> {
        grid::split_items(self.raw(key))
    }

    pub fn integers(&self, key: &str) -> Result<Vec<i64>, SuiteError> {
        grid::parse_integers(key, self.raw(key))
    }

    pub fn integer(&self, key: &str) -> Result<i64, SuiteError> {
        match self.integers(key)?.as_slice() {
            [x] => Ok(*x),
            _ => Err(SuiteError::grid(key, "expected a single integer")),
        }
    }

    pub fn count(&self, key: &str) -> Result<u64, SuiteError> {
        u64::try_from(self.integer(key)?).map_err(|_| SuiteError::grid(key, "must be nonnegative"))
    }

    pub fn switch(&self, key: &str) -> Result<bool, SuiteError> {
        match self.raw(key) {
            "on" | "true" | "yes" => Ok(true),
            "off" | "false" | "no" => Ok(false),
            other => Err(SuiteError::grid(
                key,
                format!("expected on or off, got {other:?}"),
            )),
        }
    }

    /// The grid that selects a single instance: `key=value` plus every
    /// explicitly given key other than `key`.
    pub fn single(&self, key: &str, value: impl Into<String>) -> Grid {
        self.grid.with(key, value)
    }
}

fn jobs(info: &'static TheoremInfo, params: &Params<'_>) -> Result<Vec<Job>, SuiteError> {
    match info.id {
        "fundamental-lemma" => finite::fundamental_lemma(params),
        "abelian" => finite::abelian(params),
        "dihedral" => finite::dihedral_suite(params),
        "semidirect" => finite::semidirect(params),
        "direct-product" => finite::direct_product_suite(params, false),
        "distinct-coordinates" => finite::direct_product_suite(params, true),
        "inverse-pair" => finite::inverse_pair(params),
        "stabilizer-ses" => finite::stabilizer_ses(params),
        "odd-order" => finite::odd_order(params),
        "solvable" => finite::solvable(params),
        "non-injective" => finite::non_injective(params),
        "braid-cyclic" => finite::braid_cyclic(params),
        "free-group" => words::free_group(params),
        "baumslag-solitar" => words::baumslag_solitar(params),
        "free-product" => words::free_product(params),
        _ => unreachable!("every registered id has a runner"),
    }
}

/// Runs every instance of the grid, in parallel, and reports them in grid
/// order.
pub fn verify_suite(id: &str, grid: &Grid) -> Result<SuiteResult, SuiteError> {
    let start = Instant::now();
    let info = theorem(id)?;
    for key in grid.keys() {
        if !info.keys.iter().any(|(k, _)| *k == key) {
            let known: Vec<&str> = info.keys.iter().map(|(k, _)| *k).collect();
            return Err(SuiteError::grid(
                key,
                format!("not used by {id}; known keys: {}", known.join(", ")),
            ));
        }
    }
    let params = Params { info, grid };
    let jobs = jobs(info, &params)?;
    let instances = jobs
        .into_par_iter()
        .map(|job| {
            let t = Instant::now();
            let outcome = (job.run)()?;
            Ok(InstanceResult {
                command: format!("tsslab verify {id} --grid \"{}\"", job.grid),
                instance: job.name,
                verdict: outcome.verdict,
                detail: outcome.detail,
                elapsed_ms: t.elapsed().as_millis(),
            })
        })
        .collect::<Vec<Result<InstanceResult, SuiteError>>>()
        .into_iter()
        .collect::<Result<Vec<_>, _>>()?;
    Ok(SuiteResult {
        format: 1,
        theorem: id.to_string(),
        statement: info.statement.to_string(),
        grid: grid.to_string(),
        instances,
        elapsed_ms: start.elapsed().as_millis(),
        artifacts: Vec::new(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(id: &str, grid: &str) -> SuiteResult {
        verify_suite(id, &Grid::parse(grid).unwrap()).unwrap()
    }

    #[test]
    fn registry_defaults_parse() {
        for info in THEOREMS {
            let grid = Grid::default();
            let params = Params { info, grid: &grid };
            for (key, _) in info.keys {
                let _ = params.items(key);
            }
        }
    }

    #[test]
    fn unknown_ids_and_keys_are_rejected() {
        assert!(matches!(
            verify_suite("nope", &Grid::default()),
            Err(SuiteError::UnknownTheorem(_))
        ));
        let bad = Grid::parse("m=3").unwrap();
        assert!(matches!(
            verify_suite("dihedral", &bad),
            Err(SuiteError::Grid { .. })
        ));
        let low = Grid::parse("n=2").unwrap();
        assert!(matches!(
            verify_suite("dihedral", &low),
            Err(SuiteError::Grid { .. })
        ));
    }

    #[test]
    fn dihedral_suite_passes_in_grid_order() {
        let r = run("dihedral", "n=3..8");
        assert!(r.passed());
        let names: Vec<&str> = r.instances.iter().map(|i| i.instance.as_str()).collect();
        assert_eq!(
            names,
            [
                "dihedral:3",
                "dihedral:4",
                "dihedral:5",
                "dihedral:6",
                "dihedral:7",
                "dihedral:8"
            ]
        );
        for i in &r.instances {
            let n: usize = i.instance["dihedral:".len()..].parse().unwrap();
            assert_eq!(i.detail["reflection_family"], n % 4 == 0);
            assert_eq!(
                i.command,
                format!("tsslab verify dihedral --grid \"n={n}\"")
            );
        }
    }

    #[test]
    fn semidirect_flags_missing_inversion() {
        let r = run("semidirect", "params=3,6,2|7,21,2");
        assert_eq!(r.instances[0].verdict, Verdict::Pass);
        assert!(matches!(
            r.instances[1].verdict,
            Verdict::NotApplicable { .. }
        ));
        assert!(verify_suite("semidirect", &Grid::parse("params=4,6,2").unwrap()).is_err());
    }

    #[test]
    fn solvable_reports_symmetric_four() {
        let r = run("solvable", "groups=sym:4|sym:5");
        assert_eq!(r.instances[0].verdict, Verdict::Pass);
        assert_eq!(r.instances[0].detail["s_of_g"], 3);
        assert_eq!(r.instances[0].detail["size_above_two"], true);
        assert!(matches!(
            r.instances[1].verdict,
            Verdict::NotApplicable { .. }
        ));
    }

    #[test]
    fn small_suites_pass() {
        for (id, grid) in [
            ("abelian", "n=1..12"),
            ("odd-order", "max-order=63"),
            (
                "direct-product",
                "factors=cyclic:5|dihedral:3|sym:3 max-order=60",
            ),
            (
                "distinct-coordinates",
                "factors=sym:3|dihedral:4 max-order=64",
            ),
            ("inverse-pair", "groups=dihedral:4|sym:4"),
            ("stabilizer-ses", "groups=dihedral:6|sym:4"),
            ("non-injective", "pairs=dihedral:4>cyclic:8|sym:3>sym:4"),
            (
                "fundamental-lemma",
                "fixtures=identity:sym:4|quotient-d8|quotient-s4|braid:4",
            ),
            ("free-group", "max-len=4 samples=3 sample-len=10 seed=7"),
            ("baumslag-solitar", "n=-1|2 radius=2 bound=3"),
            ("free-product", "pairs=cyclic:3*cyclic:3 max-len=3"),
        ] {
            let r = run(id, grid);
            assert!(r.passed(), "{id}: {:?}", r.failures().collect::<Vec<_>>());
        }
    }

    #[test]
    fn free_product_counterexample_is_reported() {
        let r = run("free-product", "pairs=cyclic:2*cyclic:3 max-len=4");
        let Verdict::Fail { counterexample } = &r.instances[0].verdict else {
            panic!("{:?}", r.instances[0].verdict)
        };
        assert_eq!(counterexample["case"]["kind"], "common_powers");
        assert_eq!(r.instances[0].detail["largest_certified"], 2);
    }
}
