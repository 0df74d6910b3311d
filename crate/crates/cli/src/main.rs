use std::io::{self, Read, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use octaweak::bqsym::descent_map;
use octaweak::embeddings::{
    component_interval, factorize, gap_check, partition_check, ComponentSignature,
};
use octaweak::hopf::{convert, coproduct, product};
use octaweak::verify::{find_suite, suites, SuiteContext, VerifyReport};
use octaweak::weak_order::{self, cover_step, covers_labeled, descent_class_min, MAX_N_ENV};
use octaweak::{Basis, DescentSet, Error, FormalSum, SignedPermutation, WeakOrder};
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(
    name = "octaweak",
    version,
    about = "Weak order on signed permutations and the Hopf algebras built on it"
)]
struct Cli {
    /// Rank cap for enumerations (default 6, or $OCTAWEAK_MAX_N).
    #[arg(long, global = true)]
    max_n: Option<usize>,

    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,

    /// Basis for bare permutation arguments to algebra verbs.
    #[arg(long, global = true, value_enum, ignore_case = true, default_value_t = BasisArg::F)]
    basis: BasisArg,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum BasisArg {
    #[value(name = "F")]
    F,
    #[value(name = "M")]
    M,
}

impl From<BasisArg> for Basis {
    fn from(b: BasisArg) -> Basis {
        match b {
            BasisArg::F => Basis::F,
            BasisArg::M => Basis::M,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Check {
    Partition,
    Gap,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Is U ≤ V in the left weak order? Exit 1 when not.
    Compare {
        #[arg(allow_hyphen_values = true)]
        u: String,
        #[arg(allow_hyphen_values = true)]
        v: String,
    },
    /// Upper covers s_i·U, labelled by i and the statistic that grows.
    Covers {
        #[arg(allow_hyphen_values = true)]
        u: String,
    },
    /// Greatest lower bound.
    Meet {
        #[arg(allow_hyphen_values = true)]
        u: String,
        #[arg(allow_hyphen_values = true)]
        v: String,
    },
    /// Least upper bound.
    Join {
        #[arg(allow_hyphen_values = true)]
        u: String,
        #[arg(allow_hyphen_values = true)]
        v: String,
    },
    /// Möbius function μ(U, V); 0 when U ≰ V.
    Mobius {
        #[arg(allow_hyphen_values = true)]
        u: String,
        #[arg(allow_hyphen_values = true)]
        v: String,
    },
    /// Every element of [U, V], by length. Exit 1 when empty.
    Interval {
        #[arg(allow_hyphen_values = true)]
        u: String,
        #[arg(allow_hyphen_values = true)]
        v: String,
    },
    /// Hasse diagram of B_N.
    Hasse {
        #[arg(long)]
        n: usize,
        /// Emit Graphviz DOT.
        #[arg(long)]
        dot: bool,
    },
    /// Maximum and minimum of the descent class of a set such as "{0,2}@4".
    Zeta {
        #[arg(allow_hyphen_values = true)]
        set: String,
    },
    /// Components of B_p1 × B_p2 × … inside B_n.
    Components {
        #[arg(long, value_delimiter = ',', required = true)]
        blocks: Vec<usize>,
        /// Print every element of each component.
        #[arg(long, conflicts_with = "check")]
        list: bool,
        #[arg(long, value_enum)]
        check: Option<Check>,
    },
    /// Write W = ξ·(u × v) with ξ a (P, n−P)-shuffle.
    Factorize {
        #[arg(allow_hyphen_values = true)]
        w: String,
        #[arg(long)]
        p: usize,
    },
    /// Product of two sums (bare permutations, JSON text, @file, or - for stdin).
    Product {
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(allow_hyphen_values = true)]
        y: String,
    },
    /// Coproduct of a sum.
    Coproduct {
        #[arg(allow_hyphen_values = true)]
        x: String,
    },
    /// Change of basis.
    Convert {
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(long, value_enum, ignore_case = true)]
        to: BasisArg,
    },
    /// Image of a sum under the descent map, in the fundamental basis.
    DescentMap {
        #[arg(allow_hyphen_values = true)]
        x: String,
    },
    /// Run verification suites.
    Verify {
        /// Suite name, or "all".
        #[arg(default_value = "all")]
        suite: String,
        /// List suites with the statement each checks.
        #[arg(long)]
        list: bool,
    },
}

/// Failure categories mapped to exit codes.
enum Failure {
    /// A well-formed query whose answer is negative.
    Negative,
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = std::result::Result<String, Failure>;

fn perm(text: &str) -> Result<SignedPermutation, Failure> {
    text.parse::<SignedPermutation>().map_err(Failure::from)
}

fn read_input(text: &str) -> Result<String, Failure> {
    if text == "-" {
        let mut buf = String::new();
        io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| Failure::Usage(format!("stdin: {e}")))?;
        Ok(buf)
    } else if let Some(path) = text.strip_prefix('@') {
        std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{path}: {e}")))
    } else {
        Ok(text.to_string())
    }
}

/// A sum argument: JSON object, or a bare permutation tagged with `basis`.
fn sum(text: &str, basis: Basis) -> Result<FormalSum, Failure> {
    let body = read_input(text)?;
    let trimmed = body.trim();
    if trimmed.starts_with('{') {
        Ok(FormalSum::from_json_str(trimmed)?)
    } else {
        Ok(FormalSum::basis_element(basis, perm(trimmed)?))
    }
}

fn render_perm(w: &SignedPermutation) -> String {
    if w.size() == 0 {
        "ι".to_string()
    } else {
        w.to_string()
    }
}

fn perm_json(w: &SignedPermutation) -> Value {
    Value::from(w.window())
}

fn order_for(cli: &Cli) -> WeakOrder {
    match cli.max_n {
        Some(n) => WeakOrder::new(n),
        None => WeakOrder::from_env(),
    }
}

fn lines(items: impl IntoIterator<Item = String>) -> String {
    items.into_iter().map(|s| s + "\n").collect()
}

fn run(cli: &Cli) -> Outcome {
    let order = order_for(cli);
    let basis = Basis::from(cli.basis);
    match &cli.command {
        Command::Compare { u, v } => {
            let (u, v) = (perm(u)?, perm(v)?);
            order.check_rank(u.size())?;
            let holds = order.leq(&u, &v)?;
            let gap = v.length() as i64 - u.length() as i64;
            let text = if cli.json {
                json!({"leq": holds, "length_gap": gap}).to_string() + "\n"
            } else if holds {
                format!("true (length gap {gap})\n")
            } else {
                "false\n".to_string()
            };
            if holds {
                Ok(text)
            } else {
                print!("{text}");
                Err(Failure::Negative)
            }
        }
        Command::Covers { u } => {
            let u = perm(u)?;
            order.check_rank(u.size())?;
            let covers = covers_labeled(&u);
            if cli.json {
                let items: Vec<Value> = covers
                    .iter()
                    .map(|(i, w)| json!({"generator": i, "perm": perm_json(w)}))
                    .collect();
                return Ok(Value::from(items).to_string() + "\n");
            }
            Ok(lines(covers.iter().map(|(i, w)| {
                let stat = cover_step(&u, *i).expect("cover has a statistic");
                format!("s{i}: {}  {stat:?}", render_perm(w))
            })))
        }
        Command::Meet { u, v } | Command::Join { u, v } => {
            let (u, v) = (perm(u)?, perm(v)?);
            let w = if matches!(cli.command, Command::Meet { .. }) {
                order.meet(&u, &v)?
            } else {
                order.join(&u, &v)?
            };
            Ok(if cli.json {
                perm_json(&w).to_string() + "\n"
            } else {
                render_perm(&w) + "\n"
            })
        }
        Command::Mobius { u, v } => {
            let (u, v) = (perm(u)?, perm(v)?);
            Ok(format!("{}\n", order.mobius(&u, &v)?))
        }
        Command::Interval { u, v } => {
            let (u, v) = (perm(u)?, perm(v)?);
            let items = order.interval(&u, &v)?;
            if items.is_empty() {
                eprintln!("{u} is not below {v}");
                return Err(Failure::Negative);
            }
            if cli.json {
                let arr: Vec<Value> = items.iter().map(perm_json).collect();
                return Ok(Value::from(arr).to_string() + "\n");
            }
            Ok(lines(items.iter().map(render_perm)))
        }
        Command::Hasse { n, dot } => {
            let g = order.cover_graph(*n)?;
            if *dot {
                return Ok(g.to_dot());
            }
            let (vertices, edges, height) = (g.vertex_count(), g.edge_count(), g.height());
            Ok(if cli.json {
                json!({"n": n, "vertices": vertices, "edges": edges, "height": height})
                    .to_string()
                    + "\n"
            } else {
                format!("B{n}: {vertices} vertices, {edges} edges, height {height}\n")
            })
        }
        Command::Zeta { set } => {
            let set: DescentSet = set.parse()?;
            order.check_rank(set.ambient())?;
            let max = weak_order::descent_class_max(&set);
            let min = descent_class_min(&set);
            Ok(if cli.json {
                json!({"set": set.to_string(), "max": perm_json(&max), "min": perm_json(&min)})
                    .to_string()
                    + "\n"
            } else {
                format!("max {}\nmin {}\n", render_perm(&max), render_perm(&min))
            })
        }
        Command::Components { blocks, list, check } => {
            order.check_rank(blocks.iter().sum())?;
            match check {
                Some(Check::Partition) => {
                    if partition_check(blocks, &order)? {
                        Ok("true\n".to_string())
                    } else {
                        print!("false\n");
                        Err(Failure::Negative)
                    }
                }
                Some(Check::Gap) => Ok(match gap_check(blocks, &order)? {
                    Some(w) => format!(
                        "minimum gap {} at {} < {}\n",
                        w.gap,
                        render_perm(&w.lower),
                        render_perm(&w.upper)
                    ),
                    None => "no comparable pairs across components\n".to_string(),
                }),
                None => {
                    let mut out = String::new();
                    let mut arr = Vec::new();
                    for sig in ComponentSignature::all(blocks)? {
                        let (lo, hi) = component_interval(&sig);
                        if cli.json {
                            arr.push(json!({
                                "signature": sig.to_string(),
                                "min": perm_json(&lo),
                                "max": perm_json(&hi),
                                "size": sig.cardinality(),
                            }));
                            continue;
                        }
                        out += &format!("{sig}: [{}; {}]\n", render_perm(&lo), render_perm(&hi));
                        if *list {
                            let mut elems = sig.elements();
                            elems.sort_by_key(|w| (w.length(), w.clone()));
                            for w in elems {
                                out += &format!("  {}\n", render_perm(&w));
                            }
                        }
                    }
                    Ok(if cli.json {
                        Value::from(arr).to_string() + "\n"
                    } else {
                        out
                    })
                }
            }
        }
        Command::Factorize { w, p } => {
            let w = perm(w)?;
            let f = factorize(&w, *p)?;
            Ok(if cli.json {
                json!({
                    "xi": perm_json(f.xi.perm()),
                    "left": perm_json(&f.left),
                    "right": perm_json(&f.right),
                })
                .to_string()
                    + "\n"
            } else {
                format!(
                    "xi {}\nleft {}\nright {}\n",
                    render_perm(f.xi.perm()),
                    render_perm(&f.left),
                    render_perm(&f.right)
                )
            })
        }
        Command::Product { x, y } => {
            let (x, y) = (sum(x, basis)?, sum(y, basis)?);
            order.check_rank(x.max_grade() + y.max_grade())?;
            let z = product(&x, &y, &order)?;
            Ok(if cli.json {
                z.to_json().to_string() + "\n"
            } else {
                format!("{z}\n")
            })
        }
        Command::Coproduct { x } => {
            let x = sum(x, basis)?;
            order.check_rank(x.max_grade())?;
            let z = coproduct(&x, &order)?;
            Ok(if cli.json {
                z.to_json().to_string() + "\n"
            } else {
                format!("{z}\n")
            })
        }
        Command::Convert { x, to } => {
            let x = sum(x, basis)?;
            order.check_rank(x.max_grade())?;
            let z = convert(&x, (*to).into(), &order)?;
            Ok(if cli.json {
                z.to_json().to_string() + "\n"
            } else {
                format!("{z}\n")
            })
        }
        Command::DescentMap { x } => {
            let x = sum(x, basis)?;
            order.check_rank(x.max_grade())?;
            let z = descent_map(&x, &order)?;
            Ok(if cli.json {
                z.to_json().to_string() + "\n"
            } else {
                format!("{z}\n")
            })
        }
        Command::Verify { suite, list } => verify(cli, suite, *list),
    }
}

fn verify(cli: &Cli, name: &str, list: bool) -> Outcome {
    if list {
        if cli.json {
            let arr: Vec<Value> = suites()
                .iter()
                .map(|s| json!({"name": s.name, "statement": s.statement}))
                .collect();
            return Ok(Value::from(arr).to_string() + "\n");
        }
        return Ok(lines(
            suites()
                .iter()
                .map(|s| format!("{:<24} {}", s.name, s.statement)),
        ));
    }
    let max_n = cli
        .max_n
        .or_else(|| std::env::var(MAX_N_ENV).ok().and_then(|v| v.parse().ok()))
        .unwrap_or(4);
    let ctx = SuiteContext::new(max_n);
    let selected: Vec<_> = if name == "all" {
        suites().iter().collect()
    } else {
        vec![find_suite(name).ok_or_else(|| {
            Failure::Usage(format!(
                "unknown suite {name:?}; `octaweak verify --list` shows the names"
            ))
        })?]
    };
    let mut reports: Vec<VerifyReport> = Vec::new();
    let mut out = io::stdout().lock();
    for s in selected {
        let r = s.run(&ctx);
        if !cli.json {
            let _ = writeln!(out, "{r}");
            let _ = out.flush();
        }
        reports.push(r);
    }
    let failures = reports.iter().filter(|r| !r.ok()).count();
    if cli.json {
        let arr: Vec<Value> = reports.iter().map(VerifyReport::to_json).collect();
        let _ = writeln!(out, "{}", json!({"max_n": max_n, "failures": failures, "suites": arr}));
    } else {
        let _ = writeln!(out, "{} suites, {failures} failures", reports.len());
    }
    if failures == 0 {
        Ok(String::new())
    } else {
        Err(Failure::Negative)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(Failure::Negative) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("octaweak: {msg}");
            ExitCode::from(2)
        }
    }
}
