use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};

use hamnet::corpus::corpus_gen;
use hamnet::mesh::{load_off, validate, Polyhedron};
use hamnet::netio::{net_from_json, net_polyhedron_name, net_to_json};
use hamnet::search::{is_quasigeodesic, search, HamCycle, SearchOptions};
use hamnet::svg::{emit_svg, SvgConfig};
use hamnet::unfold::{enumerate_nets, unfold, Net};
use hamnet::fixtures;
use hamnet::verify::verify_net;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Command {
    Validate,
    Search,
    Unfold,
    Nets,
    Verify,
    Demo,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Svg,
}

/// Hamiltonian quasigeodesics on convex polyhedra and their nets.
///
/// Inputs are a built-in fixture (positional or --fixture), `random:N` for
/// the hull of N random sphere points drawn with --seed, or an OFF file.
#[derive(Parser, Debug)]
#[command(name = "hamnet", version)]
struct Cli {
    command: Command,
    /// Fixture name for most commands; the net JSON path for `verify`.
    target: Option<String>,
    #[arg(long)]
    fixture: Option<String>,
    #[arg(long)]
    off: Option<PathBuf>,
    /// Vertex labels, 1-based, e.g. 1-5-6-2-3-7-8-4.
    #[arg(long)]
    cycle: Option<String>,
    /// Join edge as two 1-based labels, e.g. 1,5.
    #[arg(long)]
    edge: Option<String>,
    #[arg(long)]
    limit: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    all_cycles: bool,
    #[arg(long)]
    allow_nonconvex: bool,
    #[arg(long)]
    dedupe: bool,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

enum Failure {
    Usage(String),
    Invalid(String),
}

type Outcome = Result<(), Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn invalid(msg: impl Into<String>) -> Failure {
    Failure::Invalid(msg.into())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Validate => cmd_validate(&cli),
        Command::Search => cmd_search(&cli),
        Command::Unfold => cmd_unfold(&cli),
        Command::Nets => cmd_nets(&cli),
        Command::Verify => cmd_verify(&cli),
        Command::Demo => cmd_demo(),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Invalid(msg)) => {
            eprintln!("hamnet: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("hamnet: {msg}");
            ExitCode::from(2)
        }
    }
}

fn named_input(name: &str, seed: u64) -> Result<Polyhedron, Failure> {
    if let Some(n) = name.strip_prefix("random:") {
        let n: usize = n.parse().map_err(|_| usage(format!("bad point count in {name:?}")))?;
        return corpus_gen(n, seed).map_err(|e| invalid(e.to_string()));
    }
    fixtures::by_name(name).ok_or_else(|| usage(format!("unknown fixture {name:?}; known: {}", fixtures::NAMES.join(", "))))
}

/// Loads the single input source without validating it. `positional` is false
/// for `verify`, whose positional argument is the net file.
fn load(cli: &Cli, positional: bool) -> Result<Polyhedron, Failure> {
    let pos = if positional { cli.target.as_deref() } else { None };
    let sources = [pos.is_some(), cli.fixture.is_some(), cli.off.is_some()];
    if sources.iter().filter(|&&s| s).count() != 1 {
        return Err(usage("give exactly one input: a fixture name, --fixture NAME or --off PATH"));
    }
    if let Some(path) = &cli.off {
        let text = fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
        return load_off(&text).map_err(|e| invalid(format!("{}: {e}", path.display())));
    }
    named_input(pos.or(cli.fixture.as_deref()).expect("one source"), cli.seed)
}

/// The input, rejected unless it passes validation.
fn input(cli: &Cli, positional: bool) -> Result<Polyhedron, Failure> {
    let p = load(cli, positional)?;
    let report = validate(&p, !cli.allow_nonconvex);
    if let Some(c) = report.failures().next() {
        return Err(invalid(format!("{}: {} check failed: {}", p.name(), c.name, c.details)));
    }
    Ok(p)
}

fn emit(cli: &Cli, text: &str) -> Outcome {
    match &cli.out {
        Some(path) => fs::write(path, text).map_err(|e| usage(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            if !text.ends_with('\n') {
                println!();
            }
            Ok(())
        }
    }
}

fn cmd_validate(cli: &Cli) -> Outcome {
    let p = load(cli, true)?;
    let report = validate(&p, !cli.allow_nonconvex);
    println!("{}: V={} E={} F={}", p.name(), p.num_vertices(), p.num_edges(), p.num_faces());
    for c in &report.checks {
        println!("{:<5} {:<12} {}", if c.pass { "ok" } else { "FAIL" }, c.name, c.details);
    }
    if report.is_valid() {
        Ok(())
    } else {
        Err(invalid(format!("{} is not a valid {}polyhedron", p.name(), if cli.allow_nonconvex { "" } else { "convex " })))
    }
}

fn cmd_search(cli: &Cli) -> Outcome {
    let p = input(cli, true)?;
    let found = search(&p, !cli.all_cycles, SearchOptions { limit: cli.limit, parallel: true });
    let what = if cli.all_cycles { "Hamiltonian circuits" } else { "Hamiltonian quasigeodesics" };
    let mut text = format!("{} {what}\n", found.len());
    for q in &found {
        text.push_str(&format!("{q}\n"));
    }
    emit(cli, &text)
}

fn cycle_arg(cli: &Cli, p: &Polyhedron) -> Result<HamCycle, Failure> {
    let q = match &cli.cycle {
        Some(text) => HamCycle::parse(p, text).map_err(|e| invalid(e.to_string()))?,
        None => search(p, true, SearchOptions { limit: Some(1), parallel: false })
            .pop()
            .ok_or_else(|| invalid(format!("{} has no Hamiltonian quasigeodesic", p.name())))?,
    };
    let (ok, split) = is_quasigeodesic(p, &q).map_err(|e| invalid(e.to_string()))?;
    if !ok {
        let v = split.first_violation(hamnet::mesh::TOL_ANGLE).expect("a violation");
        return Err(invalid(format!(
            "{q} is not a quasigeodesic: at vertex {} the sides are {:.12} and {:.12}",
            v.vertex + 1,
            v.left,
            v.right
        )));
    }
    Ok(q)
}

fn edge_arg(cli: &Cli, q: &HamCycle) -> Result<(usize, usize), Failure> {
    let Some(text) = &cli.edge else {
        let v = q.vertices();
        return Ok((v[0], v[1]));
    };
    let parts: Vec<usize> = text
        .split([',', '-'])
        .map(|s| s.trim().parse::<usize>())
        .collect::<Result<_, _>>()
        .map_err(|_| usage(format!("bad --edge {text:?}; expected I,J")))?;
    match parts[..] {
        [a, b] if a >= 1 && b >= 1 => {
            q.directed_edge(a - 1, b - 1).ok_or_else(|| invalid(format!("{a}-{b} is not an edge of {q}")))
        }
        _ => Err(usage(format!("bad --edge {text:?}; expected I,J"))),
    }
}

fn render(cli: &Cli, net: &Net) -> String {
    match cli.format {
        Format::Json => net_to_json(net),
        Format::Svg => emit_svg(net, &SvgConfig::default()),
    }
}

fn cmd_unfold(cli: &Cli) -> Outcome {
    let p = input(cli, true)?;
    let q = cycle_arg(cli, &p)?;
    let e = edge_arg(cli, &q)?;
    let net = unfold(&p, &q, e).map_err(|err| invalid(err.to_string()))?;
    let report = verify_net(Some(&p), &net);
    emit(cli, &render(cli, &net))?;
    if let Some(c) = report.checks.iter().find(|c| !c.pass) {
        return Err(invalid(format!("net failed {}: {}", c.name, c.details)));
    }
    Ok(())
}

fn cmd_nets(cli: &Cli) -> Outcome {
    let p = input(cli, true)?;
    let q = cycle_arg(cli, &p)?;
    let nets = enumerate_nets(&p, &q, cli.dedupe).map_err(|e| invalid(e.to_string()))?;
    match &cli.out {
        Some(_) => {
            let text = match cli.format {
                Format::Json => format!("[\n{}\n]\n", nets.iter().map(net_to_json).collect::<Vec<_>>().join(",\n")),
                Format::Svg => return Err(usage("nets --out writes JSON only")),
            };
            emit(cli, &text)?;
        }
        None => {
            println!("{} nets for {q}{}", nets.len(), if cli.dedupe { " up to congruence" } else { "" });
            for net in &nets {
                println!("join {}-{}", net.join_edge.0 + 1, net.join_edge.1 + 1);
            }
        }
    }
    Ok(())
}

fn cmd_verify(cli: &Cli) -> Outcome {
    let path = cli.target.as_ref().ok_or_else(|| usage("verify needs a net JSON path"))?;
    let text = fs::read_to_string(path).map_err(|e| usage(format!("{path}: {e}")))?;
    let p = if cli.fixture.is_some() || cli.off.is_some() {
        input(cli, false)?
    } else {
        let name = net_polyhedron_name(&text).map_err(|e| invalid(e.to_string()))?;
        named_input(&name, cli.seed).map_err(|_| usage(format!("net is for {name:?}; pass --fixture or --off")))?
    };
    let net = net_from_json(&p, &text).map_err(|e| invalid(e.to_string()))?;
    let report = verify_net(Some(&p), &net);
    let json = serde_json::to_string_pretty(&report).expect("reports serialize");
    emit(cli, &json)?;
    if report.passed() {
        Ok(())
    } else {
        Err(invalid("net failed verification"))
    }
}

fn cmd_demo() -> Outcome {
    let cases = [
        (fixtures::square_pyramid_octa_half(), "12534"),
        (fixtures::octahedron(), "123645"),
        (fixtures::cube(), "15623784"),
    ];
    let mut ok = true;
    for (p, cycle) in cases {
        let q = HamCycle::parse(&p, cycle).map_err(|e| invalid(e.to_string()))?;
        let (quasi, _) = is_quasigeodesic(&p, &q).map_err(|e| invalid(e.to_string()))?;
        let mut failures = 0;
        for e in q.edges() {
            let good = unfold(&p, &q, e).map(|net| verify_net(Some(&p), &net).passed()).unwrap_or(false);
            if !good {
                failures += 1;
            }
        }
        let pass = quasi && failures == 0;
        ok &= pass;
        println!(
            "{:<4} {:<26} {q}: quasigeodesic={quasi}, {} of {} join edges give verified nets",
            if pass { "ok" } else { "FAIL" },
            p.name(),
            q.len() - failures,
            q.len()
        );
    }
    if ok {
        Ok(())
    } else {
        Err(invalid("demo failed"))
    }
}
