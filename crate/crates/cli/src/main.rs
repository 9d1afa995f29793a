mod output;
mod word;

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::json;
use tsslab::group::{center, conjugacy_classes, derived_series, write_cayley_table};
use tsslab::groupspec::{build_group, SpecError};
use tsslab::hom::{
    braid_cyclic_corollary_check, braid_presentation, enumerate_homs, enumerate_table_homs,
    CorollaryVerdict, HomError, HomReportDocument, DEFAULT_BUDGET,
};
use tsslab::suite::{summary_table, verify_suite, Grid, SuiteError, THEOREMS};
use tsslab::tss::{
    enumerate_tss_with, factorial_divisibility, is_tss, max_tss_size_with, realized_permutations,
    SearchOptions, TssCertificate, TssSetRecord,
};
use tsslab::{Elem, FiniteGroup};

use output::{file_stem, write_json, Format, Sink};

const EXIT_FAILURE: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_BUDGET: u8 = 3;

/// Totally symmetric sets in finite and infinite groups.
///
/// Exit status: 0 success, 1 a checked statement failed, 2 usage or input
/// error, 3 search budget exhausted.
#[derive(Debug, Parser)]
#[command(name = "tsslab", version)]
struct Cli {
    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads (default: all cores).
    #[arg(long, global = true, env = "TSSLAB_JOBS")]
    jobs: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Search-node budget for homomorphism enumeration.
    #[arg(long, global = true)]
    budget: Option<u64>,
    /// Directory for JSON evidence files.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    #[command(subcommand)]
    Group(GroupCmd),
    #[command(subcommand)]
    Tss(TssCmd),
    #[command(subcommand)]
    Stab(StabCmd),
    #[command(subcommand)]
    Hom(HomCmd),
    #[command(subcommand)]
    Word(WordCmd),
    /// Check a registered statement over a parameter grid.
    Verify {
        /// Theorem id; see --list.
        theorem: Option<String>,
        /// Parameter grid, e.g. "n=3..12" or "factors=sym:3|dihedral:4 max-order=100".
        #[arg(long, default_value = "")]
        grid: String,
        /// Shorthand for the max-order grid key.
        #[arg(long)]
        max_order: Option<u64>,
        /// List registered theorem ids with their grid keys.
        #[arg(long)]
        list: bool,
    },
    /// Summary of S(G) by group family.
    Table {
        /// Tabulate these groups instead of the default roster.
        #[arg(long = "group")]
        groups: Vec<String>,
    },
}

#[derive(Debug, Args)]
struct GroupArg {
    /// cyclic:N, dihedral:N, sym:N, semidirect:P,M,K, product:A,B or file:PATH.
    #[arg(long, short)]
    group: String,
}

#[derive(Debug, Subcommand)]
enum GroupCmd {
    /// Print the Cayley table in the text table format.
    Build(GroupArg),
    /// Order, classes, center and derived series.
    Info(GroupArg),
}

#[derive(Debug, Args)]
struct SearchArgs {
    #[command(flatten)]
    group: GroupArg,
    /// Keep one set per simultaneous conjugacy orbit.
    #[arg(long)]
    up_to_conjugacy: bool,
    /// Disable the |S|! divisibility pruning.
    #[arg(long)]
    no_gate: bool,
}

impl SearchArgs {
    fn options(&self) -> SearchOptions {
        SearchOptions {
            factorial_gate: !self.no_gate,
            up_to_conjugacy: self.up_to_conjugacy,
        }
    }
}

#[derive(Debug, Args)]
struct SetArgs {
    #[command(flatten)]
    group: GroupArg,
    /// Element label or index; repeat for each member.
    #[arg(long = "element", short = 'e', required = true)]
    elements: Vec<String>,
}

#[derive(Debug, Subcommand)]
enum TssCmd {
    /// S(G) and every maximal totally symmetric set.
    Max(SearchArgs),
    /// Every totally symmetric set of one size.
    List {
        #[command(flatten)]
        search: SearchArgs,
        #[arg(long)]
        size: usize,
    },
    /// Decide whether a set is totally symmetric.
    Check(SetArgs),
}

#[derive(Debug, Subcommand)]
enum StabCmd {
    /// Setwise stabilizer, kernel and realized permutations of a set.
    Decompose(SetArgs),
}

#[derive(Debug, Subcommand)]
enum HomCmd {
    /// Enumerate homomorphisms from braid:N or a table group into a table group.
    Enumerate {
        /// braid:N
        #[arg(long, conflicts_with = "source", required_unless_present = "source")]
        presentation: Option<String>,
        /// Source table group spec.
        #[arg(long)]
        source: Option<String>,
        #[arg(long)]
        target: String,
        /// Print every generator image tuple.
        #[arg(long)]
        list: bool,
    },
    /// Check that every homomorphism B_n -> target has cyclic image.
    BraidCheck {
        #[arg(long)]
        strands: usize,
        #[arg(long)]
        target: String,
    },
}

#[derive(Debug, Subcommand)]
enum WordCmd {
    /// The free group F_2 on a, b (inverses A, B).
    F2 {
        #[command(subcommand)]
        op: word::F2Op,
    },
    /// BS(1, n); elements as "a^P/n^Q b^T".
    Bs {
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
        #[command(subcommand)]
        op: word::BsOp,
    },
    /// Free product of two table groups; words as "[G:i][H:j]...".
    Fp {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        #[command(subcommand)]
        op: word::FpOp,
    },
}

fn parse_element(g: &FiniteGroup, text: &str) -> Result<Elem> {
    if let Some(x) = g.element_by_label(text) {
        return Ok(x);
    }
    match text.parse::<Elem>() {
        Ok(x) => Ok(g.check(x)?),
        Err(_) => bail!("{} has no element labelled {text:?}", g.name()),
    }
}

fn parse_set(args: &SetArgs) -> Result<(FiniteGroup, Vec<Elem>)> {
    let g = build_group(&args.group.group)?;
    let set = args
        .elements
        .iter()
        .map(|e| parse_element(&g, e))
        .collect::<Result<_>>()?;
    Ok((g, set))
}

fn labels(g: &FiniteGroup, set: &[Elem]) -> Vec<String> {
    set.iter().map(|&x| g.label(x)).collect()
}

fn describe_set(g: &FiniteGroup, cert: &TssCertificate) -> String {
    let witnesses: Vec<String> = cert
        .keyed_witnesses()
        .iter()
        .map(|(k, &h)| format!("{k}={}", g.label(h)))
        .collect();
    format!(
        "{{{}}}  witnesses {}",
        labels(g, &cert.elements).join(", "),
        witnesses.join(" ")
    )
}

fn set_rows(g: &FiniteGroup, sets: &[TssCertificate]) -> (Vec<String>, Vec<Vec<String>>) {
    let header = ["size", "elements", "labels", "witnesses"]
        .map(String::from)
        .to_vec();
    let rows = sets
        .iter()
        .map(|c| {
            vec![
                c.size().to_string(),
                c.elements
                    .iter()
                    .map(Elem::to_string)
                    .collect::<Vec<_>>()
                    .join(";"),
                labels(g, &c.elements).join(";"),
                c.witnesses
                    .iter()
                    .map(Elem::to_string)
                    .collect::<Vec<_>>()
                    .join(";"),
            ]
        })
        .collect();
    (header, rows)
}

fn group_cmd(sink: &Sink, cmd: &GroupCmd) -> Result<u8> {
    match cmd {
        GroupCmd::Build(a) => {
            let g = build_group(&a.group)?;
            let table = write_cayley_table(&g);
            if let Some(dir) = &sink.out {
                std::fs::create_dir_all(dir)?;
                let path = dir.join(format!("{}.table", file_stem(g.name())));
                std::fs::write(&path, &table)
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            match sink.format {
                Format::Json => sink.json(&json!({ "group": g.descriptor(), "table": table }))?,
                _ => sink.text(&table)?,
            }
        }
        GroupCmd::Info(a) => {
            let g = build_group(&a.group)?;
            let classes = conjugacy_classes(&g);
            let series = derived_series(&g);
            let mut orders: BTreeMap<usize, usize> = BTreeMap::new();
            for x in g.elements() {
                *orders.entry(g.element_order(x)).or_insert(0) += 1;
            }
            let doc = json!({
                "format": 1,
                "group": g.descriptor(),
                "abelian": g.is_abelian(),
                "generators": labels(&g, g.generators()),
                "class_sizes": classes.class_sizes(),
                "center_order": center(&g).len(),
                "derived_series_orders": series.orders(),
                "solvable": series.solvable,
                "element_orders": orders,
            });
            sink.emit(
                "group-info",
                &doc,
                || {
                    format!(
                        "{} order {}\nabelian {}\ngenerators {}\nclass sizes {:?}\ncenter order {}\nderived series {:?} ({})\nelement orders {:?}",
                        g.name(),
                        g.order(),
                        g.is_abelian(),
                        labels(&g, g.generators()).join(", "),
                        classes.class_sizes(),
                        center(&g).len(),
                        series.orders(),
                        if series.solvable { "solvable" } else { "not solvable" },
                        orders,
                    )
                },
                || {
                    let header = ["name", "order", "abelian", "classes", "center_order", "solvable"]
                        .map(String::from)
                        .to_vec();
                    let row = vec![
                        g.name().to_string(),
                        g.order().to_string(),
                        g.is_abelian().to_string(),
                        classes.len().to_string(),
                        center(&g).len().to_string(),
                        series.solvable.to_string(),
                    ];
                    (header, vec![row])
                },
            )?;
        }
    }
    Ok(0)
}

fn tss_cmd(sink: &Sink, cmd: &TssCmd) -> Result<u8> {
    match cmd {
        TssCmd::Max(a) => {
            let g = build_group(&a.group.group)?;
            let report = max_tss_size_with(&g, a.options());
            let doc = report.document(&g);
            sink.emit(
                "tss-max",
                &doc,
                || {
                    let mut t = format!(
                        "{} order {}\nS(G) = {}\ncounts by size {:?}\n",
                        g.name(),
                        g.order(),
                        report.s_of_g,
                        report.counts_by_size
                    );
                    for c in &report.maximal_sets {
                        t += &format!("  {}\n", describe_set(&g, c));
                    }
                    t
                },
                || set_rows(&g, &report.maximal_sets),
            )?;
        }
        TssCmd::List { search, size } => {
            if *size == 0 {
                bail!("--size must be at least 1");
            }
            let g = build_group(&search.group.group)?;
            let sets = enumerate_tss_with(&g, *size, search.options());
            let doc = json!({
                "format": 1,
                "group": g.descriptor(),
                "size": size,
                "up_to_conjugacy": search.up_to_conjugacy,
                "count": sets.len(),
                "sets": sets.iter().map(|c| TssSetRecord::new(&g, c)).collect::<Vec<_>>(),
            });
            sink.emit(
                "tss-list",
                &doc,
                || {
                    let mut t = format!("{} sets of size {size} in {}\n", sets.len(), g.name());
                    for c in &sets {
                        t += &format!("  {}\n", describe_set(&g, c));
                    }
                    t
                },
                || set_rows(&g, &sets),
            )?;
        }
        TssCmd::Check(a) => {
            let (g, set) = parse_set(a)?;
            let cert = is_tss(&g, &set)?;
            let doc = json!({
                "format": 1,
                "group": g.descriptor(),
                "set": set,
                "labels": labels(&g, &set),
                "is_tss": cert.is_some(),
                "certificate": cert.as_ref().map(|c| TssSetRecord::new(&g, c)),
                "factorial_divisibility": cert.as_ref().map(|_| factorial_divisibility(&g, &set)).transpose()?,
            });
            sink.emit(
                "tss-check",
                &doc,
                || match &cert {
                    Some(c) => format!("totally symmetric: {}", describe_set(&g, c)),
                    None => format!("not totally symmetric: {{{}}}", labels(&g, &set).join(", ")),
                },
                || {
                    let header = ["labels", "is_tss"].map(String::from).to_vec();
                    (
                        header,
                        vec![vec![labels(&g, &set).join(";"), cert.is_some().to_string()]],
                    )
                },
            )?;
            return Ok(if cert.is_some() { 0 } else { EXIT_FAILURE });
        }
    }
    Ok(0)
}

fn stab_cmd(sink: &Sink, cmd: &StabCmd) -> Result<u8> {
    let StabCmd::Decompose(a) = cmd;
    let (g, set) = parse_set(a)?;
    let dec = realized_permutations(&g, &set)?;
    let doc = json!({
        "format": 1,
        "group": g.descriptor(),
        "labels": labels(&g, &dec.set),
        "decomposition": dec,
        "stabilizer_order": dec.stabilizer.len(),
        "kernel_order": dec.kernel.len(),
        "realized_order": dec.realized.len(),
        "ses_holds": dec.ses_holds(),
        "full_symmetric_group": dec.realizes_full_symmetric_group(),
    });
    sink.emit(
        "stab-decompose",
        &doc,
        || {
            format!(
                "set {{{}}}\n|Stab| = {} = |kernel| {} x |realized| {}: {}\nrealizes every permutation: {}",
                labels(&g, &dec.set).join(", "),
                dec.stabilizer.len(),
                dec.kernel.len(),
                dec.realized.len(),
                if dec.ses_holds() { "holds" } else { "FAILS" },
                dec.realizes_full_symmetric_group()
            )
        },
        || {
            let header = ["stabilizer", "kernel", "realized", "ses_holds"].map(String::from).to_vec();
            let row = vec![
                dec.stabilizer.len().to_string(),
                dec.kernel.len().to_string(),
                dec.realized.len().to_string(),
                dec.ses_holds().to_string(),
            ];
            (header, vec![row])
        },
    )?;
    Ok(if dec.ses_holds() { 0 } else { EXIT_FAILURE })
}

fn braid_strands(spec: &str) -> Result<usize> {
    spec.strip_prefix("braid:")
        .and_then(|n| n.parse().ok())
        .with_context(|| format!("unsupported presentation {spec:?}; expected braid:N"))
}

fn hom_cmd(sink: &Sink, budget: u64, cmd: &HomCmd) -> Result<u8> {
    match cmd {
        HomCmd::Enumerate {
            presentation,
            source,
            target,
            list,
        } => {
            let target_group = build_group(target)?;
            let start = Instant::now();
            if let Some(spec) = presentation {
                let pres = braid_presentation(braid_strands(spec)?)?;
                let homs = enumerate_homs(&pres, &target_group, budget)?;
                let doc = HomReportDocument::new(
                    &pres,
                    &target_group,
                    &homs,
                    start.elapsed().as_millis(),
                );
                let mut value = serde_json::to_value(&doc)?;
                if *list {
                    value["images"] = json!(homs.images);
                }
                sink.emit(
                    "hom-enumerate",
                    &value,
                    || {
                        let mut t = format!(
                            "{} homomorphisms {} -> {}\nimage orders {:?}\nall cyclic {}\n",
                            doc.hom_count,
                            pres.name(),
                            target_group.name(),
                            doc.image_order_histogram,
                            doc.all_cyclic
                        );
                        if *list {
                            for images in &homs.images {
                                t += &format!("  {}\n", labels(&target_group, images).join(", "));
                            }
                        }
                        t
                    },
                    || {
                        let header = vec!["generator_images".to_string()];
                        let rows = homs
                            .images
                            .iter()
                            .map(|i| {
                                vec![i.iter().map(Elem::to_string).collect::<Vec<_>>().join(";")]
                            })
                            .collect();
                        (header, rows)
                    },
                )?;
            } else {
                let source = source.as_deref().expect("clap requires a source");
                let source_group = build_group(source)?;
                let maps = enumerate_table_homs(&source_group, &target_group, budget)?;
                let images: Vec<Vec<Elem>> = maps.iter().map(|m| m.images().to_vec()).collect();
                let injective = maps.iter().filter(|m| m.is_injective()).count();
                let mut value = json!({
                    "format": 1,
                    "source": source_group.descriptor(),
                    "target": target_group.descriptor(),
                    "hom_count": maps.len(),
                    "injective_count": injective,
                    "elapsed_ms": start.elapsed().as_millis(),
                });
                if *list {
                    value["element_maps"] = json!(images);
                }
                sink.emit(
                    "hom-enumerate",
                    &value,
                    || {
                        let mut t = format!(
                            "{} homomorphisms {} -> {}, {} injective\n",
                            maps.len(),
                            source_group.name(),
                            target_group.name(),
                            injective
                        );
                        if *list {
                            for m in &images {
                                t += &format!("  {}\n", labels(&target_group, m).join(", "));
                            }
                        }
                        t
                    },
                    || {
                        let header = vec!["element_map".to_string()];
                        let rows = images
                            .iter()
                            .map(|i| {
                                vec![i.iter().map(Elem::to_string).collect::<Vec<_>>().join(";")]
                            })
                            .collect();
                        (header, rows)
                    },
                )?;
            }
            Ok(0)
        }
        HomCmd::BraidCheck { strands, target } => {
            let g = build_group(target)?;
            let report = braid_cyclic_corollary_check(*strands, &g, budget)?;
            sink.emit(
                "hom-braid-check",
                &report,
                || {
                    format!(
                        "B_{} -> {}: S(target) = {}, threshold {}\n{:?}: {} homomorphisms, image orders {:?}",
                        report.strands,
                        g.name(),
                        report.target_s,
                        report.threshold,
                        report.verdict,
                        report.hom_count,
                        report.image_order_histogram
                    )
                },
                || {
                    let header = ["strands", "target", "target_s", "verdict", "hom_count", "all_cyclic"]
                        .map(String::from)
                        .to_vec();
                    let row = vec![
                        report.strands.to_string(),
                        g.name().to_string(),
                        report.target_s.to_string(),
                        format!("{:?}", report.verdict),
                        report.hom_count.to_string(),
                        report.all_cyclic.to_string(),
                    ];
                    (header, vec![row])
                },
            )?;
            Ok(if report.verdict == CorollaryVerdict::Fails {
                EXIT_FAILURE
            } else {
                0
            })
        }
    }
}

fn verify_cmd(
    cli: &Cli,
    sink: &Sink,
    theorem: Option<&str>,
    grid: &str,
    max_order: Option<u64>,
    list: bool,
) -> Result<u8> {
    if list {
        let mut t = String::new();
        for info in THEOREMS {
            t += &format!("{}\n    {}\n", info.id, info.statement);
            for (k, v) in info.keys {
                t += &format!("    {k}={v}\n");
            }
        }
        sink.text(&t)?;
        return Ok(0);
    }
    let Some(id) = theorem else {
        bail!("missing theorem id; run `tsslab verify --list`");
    };
    let info = tsslab::suite::theorem(id)?;
    let mut grid = Grid::parse(grid)?;
    if let Some(m) = max_order {
        grid = grid.with("max-order", m.to_string());
    }
    let has_key = |k: &str| info.keys.iter().any(|(key, _)| *key == k);
    if has_key("seed") {
        grid = grid.or_insert("seed", cli.seed.to_string());
    }
    if let (true, Some(b)) = (has_key("budget"), cli.budget) {
        grid = grid.or_insert("budget", b.to_string());
    }
    let mut result = verify_suite(id, &grid)?;
    if let Some(dir) = &sink.out {
        for inst in &result.instances {
            let path = dir
                .join(id)
                .join(format!("{}.json", file_stem(&inst.instance)));
            write_json(&path, inst)?;
            result.artifacts.push(path.display().to_string());
        }
        write_json(&dir.join(format!("{id}.json")), &result)?;
    }
    match sink.format {
        Format::Json => sink.json(&result)?,
        Format::Text => {
            let mut t = format!("{id}: {}\n", result.statement);
            for inst in &result.instances {
                let mark = match inst.verdict.name() {
                    "pass" => "PASS".to_string(),
                    "fail" => "FAIL".to_string(),
                    "not_applicable" => "N/A ".to_string(),
                    _ => "EXH ".to_string(),
                };
                t += &format!(
                    "{mark} {:<36} {}\n",
                    inst.instance,
                    serde_json::to_string(&inst.detail)?
                );
                match &inst.verdict {
                    tsslab::suite::Verdict::Fail { counterexample } => {
                        t += &format!(
                            "     counterexample {}\n     rerun: {}\n",
                            counterexample, inst.command
                        );
                    }
                    tsslab::suite::Verdict::NotApplicable { reason } => {
                        t += &format!("     {reason}\n")
                    }
                    tsslab::suite::Verdict::Exhausted { bound } => {
                        t += &format!("     bounded search to {bound} found no witness\n")
                    }
                    tsslab::suite::Verdict::Pass => {}
                }
            }
            t += &format!(
                "{} instances: {} pass, {} fail, {} not applicable, {} exhausted\n",
                result.instances.len(),
                result.count("pass"),
                result.count("fail"),
                result.count("not_applicable"),
                result.count("exhausted")
            );
            sink.text(&t)?;
        }
        Format::Csv => {
            let rows: Vec<Vec<String>> = result
                .instances
                .iter()
                .map(|i| {
                    vec![
                        i.instance.clone(),
                        i.verdict.name().to_string(),
                        i.elapsed_ms.to_string(),
                        i.command.clone(),
                    ]
                })
                .collect();
            sink.csv(&["instance", "verdict", "elapsed_ms", "command"], &rows)?;
        }
    }
    Ok(if result.passed() { 0 } else { EXIT_FAILURE })
}

fn table_cmd(sink: &Sink, groups: &[String]) -> Result<u8> {
    let rows = summary_table(groups)?;
    let doc = json!({ "format": 1, "rows": rows });
    sink.emit(
        "table",
        &doc,
        || {
            let header = ["S(G)", "family", "instance", "computed", "consistent"];
            let cells: Vec<[String; 5]> = rows
                .iter()
                .map(|r| {
                    [
                        r.bound.clone(),
                        r.family.clone(),
                        r.instance.clone(),
                        r.computed.clone(),
                        r.consistent.to_string(),
                    ]
                })
                .collect();
            let widths: Vec<usize> = (0..5)
                .map(|i| {
                    cells
                        .iter()
                        .map(|c| c[i].chars().count())
                        .chain([header[i].len()])
                        .max()
                        .unwrap_or(0)
                })
                .collect();
            let line = |cols: &[&str]| {
                cols.iter()
                    .zip(&widths)
                    .map(|(c, w)| format!("{c:<w$}"))
                    .collect::<Vec<_>>()
                    .join("  ")
                    .trim_end()
                    .to_string()
            };
            let mut t = line(&header) + "\n";
            for c in &cells {
                t += &(line(&c.iter().map(String::as_str).collect::<Vec<_>>()) + "\n");
            }
            t
        },
        || {
            let header = [
                "bound",
                "family",
                "instance",
                "computed",
                "consistent",
                "method",
            ]
            .map(String::from)
            .to_vec();
            let data = rows
                .iter()
                .map(|r| {
                    vec![
                        r.bound.clone(),
                        r.family.clone(),
                        r.instance.clone(),
                        r.computed.clone(),
                        r.consistent.to_string(),
                        r.method.clone(),
                    ]
                })
                .collect();
            (header, data)
        },
    )?;
    Ok(0)
}

fn run(cli: &Cli) -> Result<u8> {
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            bail!("--jobs must be at least 1");
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()?;
    }
    let sink = Sink {
        format: cli.format,
        out: cli.out.clone(),
    };
    let budget = cli.budget.unwrap_or(DEFAULT_BUDGET);
    match &cli.command {
        Command::Group(cmd) => group_cmd(&sink, cmd),
        Command::Tss(cmd) => tss_cmd(&sink, cmd),
        Command::Stab(cmd) => stab_cmd(&sink, cmd),
        Command::Hom(cmd) => hom_cmd(&sink, budget, cmd),
        Command::Word(cmd) => {
            let ok = match cmd {
                WordCmd::F2 { op } => word::f2(&sink, op)?,
                WordCmd::Bs { n, op } => word::bs(&sink, *n, op)?,
                WordCmd::Fp { left, right, op } => word::fp(&sink, left, right, op)?,
            };
            Ok(if ok { 0 } else { EXIT_FAILURE })
        }
        Command::Verify {
            theorem,
            grid,
            max_order,
            list,
        } => verify_cmd(cli, &sink, theorem.as_deref(), grid, *max_order, *list),
        Command::Table { groups } => table_cmd(&sink, groups),
    }
}

fn is_budget_error(e: &anyhow::Error) -> bool {
    e.chain().any(|cause| {
        matches!(
            cause.downcast_ref::<HomError>(),
            Some(HomError::BudgetExceeded { .. })
        ) || matches!(
            cause.downcast_ref::<SuiteError>(),
            Some(SuiteError::Budget { .. })
        ) || matches!(
            cause.downcast_ref::<SuiteError>(),
            Some(SuiteError::Hom(HomError::BudgetExceeded { .. }))
        )
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.chain().any(|c| c.downcast_ref::<SpecError>().is_some()) {
                eprintln!("group specs: cyclic:N, dihedral:N, sym:N, semidirect:P,M,K, product:A,B, file:PATH");
            }
            ExitCode::from(if is_budget_error(&e) {
                EXIT_BUDGET
            } else {
                EXIT_USAGE
            })
        }
    }
}
