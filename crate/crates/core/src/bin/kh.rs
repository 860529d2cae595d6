use std::collections::BTreeMap;
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use kh_core::archring::{self, ArcRing};
use kh_core::cache::{Cache, CacheKey};
use kh_core::checks::{self, Params};
use kh_core::diagram::{BraidWord, LinkDiagram};
use kh_core::homology::{self, BigradedAbelianGroup, Ring};
use kh_core::Error;

#[derive(Parser)]
#[command(name = "kh", version, about = "Khovanov and Lee homology of closed braids")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Homology of a braid closure, a torus link T(p, q) or T'(2k, 2kn).
    Compute(ComputeArgs),
    /// Run one of the verification checks.
    Verify(VerifyArgs),
    /// Crossingless matchings and the centre of the arc ring H^k.
    Hk(HkArgs),
}

#[derive(Args)]
#[command(group(ArgGroup::new("link").required(true).args(["braid", "torus", "torus_prime"])))]
struct LinkArgs {
    /// Braid word, e.g. "1 -2 1" (needs --strands).
    #[arg(long, requires = "strands", allow_hyphen_values = true)]
    braid: Option<String>,
    #[arg(long)]
    strands: Option<usize>,
    /// Torus link T(P, Q).
    #[arg(long, num_args = 2, value_names = ["P", "Q"])]
    torus: Option<Vec<usize>>,
    /// T'(2K, 2KN): T(2K, 2KN) with K alternate components reversed.
    #[arg(long, num_args = 2, value_names = ["K", "N"])]
    torus_prime: Option<Vec<usize>>,
}

impl LinkArgs {
    fn diagram(&self) -> Result<LinkDiagram, Error> {
        if let Some(w) = &self.braid {
            return Ok(BraidWord::parse(w, self.strands.unwrap_or(0))?.close());
        }
        if let Some(pq) = &self.torus {
            return Ok(BraidWord::torus(pq[0], pq[1])?.close());
        }
        let kn = self.torus_prime.as_ref().expect("clap enforces one link source");
        LinkDiagram::torus_prime(kn[0], kn[1])
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum RingArg {
    Z,
    Q,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Args)]
struct ComputeArgs {
    #[command(flatten)]
    link: LinkArgs,
    #[arg(long, value_enum, default_value = "z")]
    ring: RingArg,
    /// Rational Lee homology ranks instead of Khovanov homology.
    #[arg(long)]
    lee: bool,
    /// Cancel unit entries of the complex before taking homology (needed above 16 crossings).
    #[arg(long)]
    reduce: bool,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Neither read nor write the result cache.
    #[arg(long)]
    no_cache: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// theorem1 | theorem2 | theorem3 | center | admissible | cone | lee | fixtures
    check: String,
    #[arg(long)]
    k: Option<u32>,
    #[arg(long)]
    n: Option<u32>,
    #[arg(long)]
    p: Option<usize>,
    #[arg(long)]
    q: Option<i64>,
    /// Torus family for `fixtures` (only 3).
    #[arg(long)]
    family: Option<usize>,
    /// Diagram for `cone` / `lee`; without one `cone` walks the T(2k, 2kn) tower.
    #[arg(long, requires = "strands", allow_hyphen_values = true)]
    braid: Option<String>,
    #[arg(long)]
    strands: Option<usize>,
    #[arg(long)]
    reduce: bool,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args)]
#[command(group(ArgGroup::new("what").required(true).args(["matchings", "center"])))]
struct HkArgs {
    /// List the crossingless matchings of 2K points.
    #[arg(long, value_name = "K")]
    matchings: Option<usize>,
    /// Graded ranks of the centre of H^K (K <= 4).
    #[arg(long, value_name = "K")]
    center: Option<usize>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = match cli.command {
        Command::Compute(a) => compute(&a).map(|s| (s, true)),
        Command::Verify(a) => verify(&a),
        Command::Hk(a) => hk(&a).map(|s| (s, true)),
    };
    match out {
        Ok((text, passed)) => {
            print!("{text}");
            if passed { ExitCode::SUCCESS } else { ExitCode::from(1) }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn compute(a: &ComputeArgs) -> Result<String, Error> {
    let d = a.link.diagram()?;
    let cache = if a.no_cache { Cache::disabled() } else { Cache::from_env() };
    let header = json!({
        "link": d.canonical(),
        "crossings": d.crossing_count(),
        "components": d.component_count(),
        "n_plus": d.n_plus(),
        "n_minus": d.n_minus(),
    });
    if a.lee {
        let key = CacheKey::new(d.canonical(), "LEE", "Q");
        let payload = cache.get_or_compute(&key, || {
            let ranks = homology::lee_degree_ranks(&d, a.reduce)?;
            let rows: Vec<Value> = ranks.iter().map(|(i, r)| json!({"i": i, "rank": r})).collect();
            Ok::<_, Error>(json!({"ring": "Q", "ranks": rows}).to_string())
        })?;
        let lee: Value = serde_json::from_str(&payload).expect("cached Lee JSON");
        let ranks: BTreeMap<i64, u64> = lee["ranks"]
            .as_array()
            .into_iter()
            .flatten()
            .map(|r| (r["i"].as_i64().unwrap_or(0), r["rank"].as_u64().unwrap_or(0)))
            .collect();
        return Ok(match a.format {
            Format::Json => {
                let mut v = header;
                v["theory"] = json!("lee");
                v["homology"] = lee;
                format!("{v}\n")
            }
            Format::Csv => std::iter::once("i,rank".to_string()).chain(ranks.iter().map(|(i, r)| format!("{i},{r}"))).map(|l| l + "\n").collect(),
            Format::Text => {
                let mut s = format!("Lee homology over Q of {} ({} crossings, {} components)\n", d.canonical(), d.crossing_count(), d.component_count());
                for (i, r) in &ranks {
                    s += &format!("  H^{i} = Q^{r}\n");
                }
                s
            }
        });
    }

    let ring = match a.ring {
        RingArg::Z => Ring::Z,
        RingArg::Q => Ring::Q,
    };
    let key = CacheKey::new(d.canonical(), "KHOVANOV", ring.to_string());
    let payload = cache.get_or_compute(&key, || Ok::<_, Error>(homology::invariant_homology(&d, ring, a.reduce)?.to_json_string()))?;
    let h = BigradedAbelianGroup::from_json_str(&payload).expect("cached homology JSON");
    let p = homology::poincare(&h);
    let width = homology::delta_width(&h).ok();
    Ok(match a.format {
        Format::Json => {
            let mut v = header;
            v["theory"] = json!("khovanov");
            v["homology"] = h.to_json();
            v["poincare"] = p.to_json();
            v["delta_width"] = json!(width);
            format!("{v}\n")
        }
        Format::Csv => {
            let mut s = String::from("i,j,free,torsion\n");
            for ((i, j), g) in h.iter() {
                let t: Vec<String> = g.torsion.iter().map(|t| t.to_string()).collect();
                s += &format!("{i},{j},{},{}\n", g.free, t.join(";"));
            }
            s
        }
        Format::Text => {
            let mut s = format!("Khovanov homology over {ring} of {} ({} crossings, n+ = {}, n- = {})\n", d.canonical(), d.crossing_count(), d.n_plus(), d.n_minus());
            s += &h.to_string();
            s += &format!("Poincare polynomial: {p}\n");
            if let Some(w) = width {
                s += &format!("delta width: {w}\n");
            }
            s
        }
    })
}

fn verify(a: &VerifyArgs) -> Result<(String, bool), Error> {
    let diagram = match &a.braid {
        Some(w) => Some(BraidWord::parse(w, a.strands.unwrap_or(0))?.close()),
        None => None,
    };
    let params = Params { k: a.k, n: a.n, p: a.p, q: a.q, family: a.family, diagram, reduce: a.reduce };
    let r = checks::run(&a.check, &params)?;
    let text = match a.format {
        Format::Json => format!("{}\n", json!({"check": r.check, "passed": r.passed(), "items": r.items})),
        Format::Csv => {
            let mut s = String::from("what,expected,actual,ok\n");
            for it in &r.items {
                s += &format!("{:?},{:?},{:?},{}\n", it.what, it.expected, it.actual, it.ok);
            }
            s
        }
        Format::Text => r.to_string(),
    };
    Ok((text, r.passed()))
}

fn hk(a: &HkArgs) -> Result<String, Error> {
    if let Some(k) = a.matchings {
        let ms: Vec<String> = archring::enumerate_matchings(k).iter().map(|m| m.to_parens()).collect();
        let ring = ArcRing::new(k)?;
        return Ok(match a.format {
            Format::Json => format!("{}\n", json!({"k": k, "matchings": ms, "dimension": ring.dim()})),
            Format::Csv | Format::Text => ms.iter().map(|m| format!("{m}\n")).collect(),
        });
    }
    let k = a.center.expect("clap enforces one of --matchings / --center");
    let c = archring::center(k)?;
    Ok(match a.format {
        Format::Json => {
            let ranks: Vec<Value> = c.ranks.iter().map(|(d, r)| json!({"degree": d, "rank": r})).collect();
            format!("{}\n", json!({"k": k, "ranks": ranks, "total": c.total(), "basis": c.basis}))
        }
        Format::Csv => std::iter::once("degree,rank".to_string()).chain(c.ranks.iter().map(|(d, r)| format!("{d},{r}"))).map(|l| l + "\n").collect(),
        Format::Text => {
            let mut s = format!("centre of H^{k}: total rank {}\n", c.total());
            for (d, r) in &c.ranks {
                s += &format!("  degree {d}: rank {r}\n");
            }
            s
        }
    })
}
