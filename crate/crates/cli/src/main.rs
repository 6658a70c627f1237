use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use lbgraph::families::{bits_from_hex, FamilyInstance, FamilySpec};
use lbgraph::graph::{parse_document, write_document};
use lbgraph::oracles::{distance_summary, hop_diameter};
use lbgraph::sim::{
    collect_for_instance, parse_transcript, run, write_transcript, BfsTree, IdenticalDetect, IdenticalParams,
    SimConfig, C_IMPL,
};
use lbgraph::streaming::{store_all_for_instance, stream_cut_simulate};
use lbgraph::twoparty::{apsp_protocol, cut_simulate, random_partitioned};
use lbgraph::verify::{parse_report, verify_family, write_report, SweepMode};

const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser)]
#[command(name = "lbgraph", version, about = "Lower-bound graph families, oracles and two-party harnesses")]
struct Cli {
    /// Seed for sampling and per-node random tapes.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads for sweeps (0 = one per core).
    #[arg(long, global = true, default_value_t = 0)]
    workers: usize,
    /// Message size limit B; defaults to 8·⌈log₂ n⌉.
    #[arg(long, global = true)]
    bandwidth_bits: Option<usize>,
    #[arg(long, global = true)]
    max_rounds: Option<u64>,
    /// Where to write the command's document.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Program {
    Collect,
    Identical,
    Bfs,
}

#[derive(Subcommand)]
enum Command {
    /// Build a family instance from hexadecimal inputs.
    Build {
        family: String,
        /// Parameters such as `k=4` or `k=4,q=2`.
        #[arg(long, default_value = "")]
        params: String,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: Option<String>,
    },
    /// Sweep a family and check its lemma with the exact oracles.
    Verify {
        family: String,
        #[arg(long, default_value = "")]
        params: String,
        /// Draw this many pairs (plus corners) instead of enumerating all.
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Run a CONGEST program on an instance; `--out` receives the transcript.
    Simulate {
        instance: PathBuf,
        #[arg(long, value_enum, default_value = "collect")]
        program: Program,
    },
    /// Replay the gather-and-evaluate program as an Alice/Bob protocol.
    Cutsim { instance: PathBuf },
    /// Two-party APSP on an instance or on a random weighted graph.
    Apsp {
        instance: Option<PathBuf>,
        /// Node count of a random graph, used when no instance is given.
        #[arg(long, default_value_t = 20)]
        random: usize,
        #[arg(long, default_value_t = 100)]
        wmax: u64,
    },
    /// Streaming reduction with a store-all program.
    Stream {
        instance: PathBuf,
        #[arg(long, default_value_t = 1)]
        passes: usize,
        /// Memory cap M in bits; defaults to the store-all state size.
        #[arg(long)]
        memory: Option<usize>,
    },
    /// Summarize a report, transcript or instance file.
    Report { file: PathBuf },
}

/// Key/value lines printed by every run, ending with the pass flag.
struct RunReport {
    lines: Vec<(String, String)>,
    pass: bool,
}

impl RunReport {
    fn new(command: &str, seed: u64) -> RunReport {
        RunReport {
            lines: vec![
                ("lbrun".into(), "1".into()),
                ("version".into(), VERSION.into()),
                ("command".into(), command.into()),
                ("seed".into(), seed.to_string()),
            ],
            pass: true,
        }
    }

    fn add(&mut self, key: &str, value: impl ToString) {
        self.lines.push((key.to_owned(), value.to_string()));
    }

    fn check(&mut self, key: &str, ok: bool) {
        self.add(key, if ok { "yes" } else { "no" });
        self.pass &= ok;
    }

    fn render(&self) -> String {
        let mut s: String = self.lines.iter().map(|(k, v)| format!("{k} {v}\n")).collect();
        s.push_str(&format!("pass {}\n", self.pass as u8));
        s
    }
}

fn load_instance(path: &Path) -> Result<FamilyInstance> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let doc = parse_document(&text).with_context(|| format!("parsing {}", path.display()))?;
    Ok(FamilyInstance::from_document(&doc)?)
}

fn sim_config(cli: &Cli, n: usize) -> SimConfig {
    let mut cfg = SimConfig::for_nodes(n).with_seed(cli.seed);
    if let Some(b) = cli.bandwidth_bits {
        cfg = cfg.with_bandwidth(b);
    }
    if let Some(r) = cli.max_rounds {
        cfg = cfg.with_max_rounds(r);
    }
    cfg
}

fn write_out(cli: &Cli, text: &str) -> Result<()> {
    if let Some(path) = &cli.out {
        fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(())
}

fn cmd_build(cli: &Cli, family: &str, params: &str, x: &str, y: Option<&str>) -> Result<bool> {
    let spec = FamilySpec::parse(family, params)?;
    spec.validate()?;
    let k = spec.input_len();
    let x = bits_from_hex(x, k)?;
    let y = y.map(|y| bits_from_hex(y, k)).transpose()?;
    let inst = spec.build(&x, y.as_deref())?;
    let text = write_document(&inst.to_document());
    match &cli.out {
        Some(_) => write_out(cli, &text)?,
        None => print!("{text}"),
    }
    eprintln!(
        "{} {}: {} nodes, {} edges, cut {}, expected {}",
        spec.family(),
        spec.params_string(),
        inst.graph().node_count(),
        inst.graph().edge_count(),
        inst.pg.cut().len(),
        inst.expected
    );
    Ok(true)
}

fn cmd_verify(cli: &Cli, family: &str, params: &str, samples: Option<usize>) -> Result<bool> {
    let spec = FamilySpec::parse(family, params)?;
    let mode = samples.map_or(SweepMode::Exhaustive, SweepMode::Sampled);
    let report = verify_family(&spec, mode, cli.seed, cli.workers)?;
    let text = write_report(&report);
    write_out(cli, &text)?;
    println!(
        "{} {}: {} pairs, {} violations, cut {} (formula {}), {:.2}s, {}",
        spec.family(),
        spec.params_string(),
        report.pairs_tested,
        report.violations.len(),
        report.cut_observed,
        report.cut_formula,
        report.wall_time.as_secs_f64(),
        if report.pass() { "PASS" } else { "FAIL" }
    );
    for v in report.violations.iter().take(10) {
        println!("  violation: {}", v.reason);
    }
    Ok(report.pass())
}

fn cmd_simulate(cli: &Cli, path: &Path, program: Program) -> Result<bool> {
    let inst = load_instance(path)?;
    let g = inst.graph();
    let cfg = sim_config(cli, g.node_count());
    let d = hop_diameter(g);
    let mut rep = RunReport::new("simulate", cli.seed);
    rep.add("bandwidth", cfg.bandwidth_bits);
    rep.add("hop_diameter", d);
    let transcript = match program {
        Program::Collect => {
            let out = run(g, &cfg, collect_for_instance(&inst))?;
            rep.add("program", "collect");
            rep.add("output", out.outputs[0]);
            rep.add("rounds", out.rounds);
            rep.check("outputs_agree", out.outputs.iter().all(|&o| o == out.outputs[0]));
            rep.check("matches_expected", out.outputs[0] == inst.expected);
            out.transcript
        }
        Program::Identical => {
            let FamilySpec::IdenticalSubgraphs { k, weight_bits, .. } = inst.spec else {
                bail!("identical detection needs an identical-subgraphs instance");
            };
            let params = IdenticalParams::new(k, weight_bits, cfg.bandwidth_bits, None)?;
            let out = run(g, &cfg, |ctx| IdenticalDetect::new(ctx, &params))?;
            rep.add("program", "identical");
            rep.add("output", out.outputs[0]);
            rep.add("rounds", out.rounds);
            rep.add("c_impl", C_IMPL);
            rep.check("outputs_agree", out.outputs.iter().all(|&o| o == out.outputs[0]));
            rep.check("rounds_within_bound", out.rounds <= C_IMPL * (d + 1));
            out.transcript
        }
        Program::Bfs => {
            let root = g.ids().next().expect("nonempty graph");
            let out = run(g, &cfg, |ctx| BfsTree::new(&ctx, root))?;
            let depth = out.outputs.iter().map(|i| i.depth).max().unwrap_or(0);
            rep.add("program", "bfs");
            rep.add("max_depth", depth);
            rep.add("rounds", out.rounds);
            rep.check("depth_at_most_diameter", depth <= d);
            out.transcript
        }
    };
    rep.add("messages", transcript.messages.len());
    rep.add("total_bits", transcript.total_bits());
    write_out(cli, &write_transcript(&transcript))?;
    print!("{}", rep.render());
    Ok(rep.pass)
}

fn cmd_cutsim(cli: &Cli, path: &Path) -> Result<bool> {
    let inst = load_instance(path)?;
    let cfg = sim_config(cli, inst.graph().node_count());
    let out = cut_simulate(&inst, &cfg, collect_for_instance(&inst))?;
    let mut rep = RunReport::new("cutsim", cli.seed);
    rep.add("family", inst.family());
    rep.add("params", inst.spec.params_string());
    rep.add("K", inst.input_len());
    rep.add("cut", out.cut_size);
    rep.add("rounds", out.rounds);
    rep.add("bandwidth", out.bandwidth_bits);
    rep.add("bits_alice_to_bob", out.ledger.bits_alice_to_bob);
    rep.add("bits_bob_to_alice", out.ledger.bits_bob_to_alice);
    rep.add("total_bits", out.ledger.total());
    rep.add("bound", out.bound());
    rep.add(
        "bits_per_round_edge",
        format!("{:.3}", out.ledger.total() as f64 / (out.rounds * out.cut_size as u64).max(1) as f64),
    );
    rep.add("verdict", if out.ledger.total() <= out.bound() { "within bound" } else { "exceeds bound" });
    rep.pass &= out.ledger.total() <= out.bound();
    match out.agreed() {
        Some(v) => {
            rep.add("output", v);
            rep.check("matches_expected", *v == inst.expected);
        }
        None => rep.check("outputs_agree", false),
    }
    let text = rep.render();
    write_out(cli, &text)?;
    print!("{text}");
    Ok(rep.pass)
}

fn cmd_apsp(cli: &Cli, path: Option<&Path>, n: usize, wmax: u64) -> Result<bool> {
    let pg = match path {
        Some(p) => load_instance(p)?.pg,
        None => {
            if n < 2 || wmax == 0 {
                bail!("random graphs need --random >= 2 and --wmax >= 1");
            }
            random_partitioned(&mut ChaCha8Rng::seed_from_u64(cli.seed), n, wmax)
        }
    };
    let out = apsp_protocol(&pg)?;
    let oracle = distance_summary(pg.graph());
    let matches = out.alice.iter().chain(&out.bob).all(|(u, row)| row.as_slice() == oracle.row(*u));
    let mut rep = RunReport::new("apsp", cli.seed);
    rep.add("nodes", pg.graph().node_count());
    rep.add("cut_nodes", out.cut_nodes);
    rep.add("d_bits", out.d_bits);
    rep.add("bits_alice_to_bob", out.ledger.bits_alice_to_bob);
    rep.add("bits_bob_to_alice", out.ledger.bits_bob_to_alice);
    rep.add("bound", out.bound());
    rep.check("tables match oracle:", matches);
    rep.check("within_bound", out.ledger.total() <= out.bound());
    let text = rep.render();
    write_out(cli, &text)?;
    print!("{text}");
    Ok(rep.pass)
}

fn cmd_stream(cli: &Cli, path: &Path, passes: usize, memory: Option<usize>) -> Result<bool> {
    let inst = load_instance(path)?;
    let cap = memory.unwrap_or(usize::MAX);
    let out = stream_cut_simulate(&inst, store_all_for_instance(&inst, cap), passes, cap)?;
    let m = memory.unwrap_or(out.max_state_bits);
    let mut rep = RunReport::new("stream", cli.seed);
    rep.add("family", inst.family());
    rep.add("params", inst.spec.params_string());
    rep.add("passes", passes);
    rep.add("memory_cap", m);
    rep.add("max_handoff_bits", out.max_state_bits);
    rep.add("total_bits", out.total_bits());
    rep.add("bound", out.bound_for(m));
    rep.add("output", out.output);
    rep.check("matches_expected", out.output == inst.expected);
    rep.check("within_bound", out.total_bits() <= out.bound_for(m));
    let text = rep.render();
    write_out(cli, &text)?;
    print!("{text}");
    Ok(rep.pass)
}

fn cmd_report(path: &Path) -> Result<bool> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let head = text.split_whitespace().next().unwrap_or("");
    match head {
        "lbreport" => {
            let r = parse_report(&text)?;
            println!(
                "verify {} {}: {} pairs, {} violations, {}",
                r.spec.family(),
                r.spec.params_string(),
                r.pairs_tested,
                r.violations.len(),
                if r.pass() { "PASS" } else { "FAIL" }
            );
            Ok(r.pass())
        }
        "lbtranscript" => {
            let t = parse_transcript(&text)?;
            println!(
                "transcript: {} nodes, B = {}, {} rounds, {} messages, {} bits",
                t.nodes,
                t.bandwidth_bits,
                t.rounds,
                t.messages.len(),
                t.total_bits()
            );
            Ok(true)
        }
        "lbgraph" => {
            let doc = parse_document(&text)?;
            match FamilyInstance::from_document(&doc) {
                Ok(inst) => println!(
                    "instance {} {}: {} nodes, {} edges, cut {}, expected {}",
                    inst.family(),
                    inst.spec.params_string(),
                    inst.graph().node_count(),
                    inst.graph().edge_count(),
                    inst.pg.cut().len(),
                    inst.expected
                ),
                Err(_) => {
                    let g = &doc.graph;
                    println!("graph: {} nodes, {} edges", g.node_count(), g.edge_count());
                }
            }
            Ok(true)
        }
        "lbrun" => {
            print!("{text}");
            Ok(text.lines().any(|l| l == "pass 1"))
        }
        _ => bail!("{}: unrecognized file type", path.display()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Build { family, params, x, y } => cmd_build(&cli, family, params, x, y.as_deref()),
        Command::Verify { family, params, samples } => cmd_verify(&cli, family, params, *samples),
        Command::Simulate { instance, program } => cmd_simulate(&cli, instance, *program),
        Command::Cutsim { instance } => cmd_cutsim(&cli, instance),
        Command::Apsp { instance, random, wmax } => cmd_apsp(&cli, instance.as_deref(), *random, *wmax),
        Command::Stream { instance, passes, memory } => cmd_stream(&cli, instance, *passes, *memory),
        Command::Report { file } => cmd_report(file),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
