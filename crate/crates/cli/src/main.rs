//! Command-line front end: construction, parameter reports, identity
//! checks, searches, classification, stabilizers.
//!
//! Exit codes: 0 = success / property holds / solution found; 1 = property
//! fails or search exhausted with nothing; 2 = usage or file format error;
//! 3 = node budget exceeded.

use clap::{Parser, Subcommand, ValueEnum};
use dualpolar::canon::{classify, stabilizer_in_group};
use dualpolar::files::{read_grp, read_ovd, write_npg, write_ovd, OvdData};
use dualpolar::geometry::{build_dual_polar, load_npg, Geometry};
use dualpolar::group::load_group;
use dualpolar::ovoid::{
    admissible_m, certify, check_parameter_bounds, check_two_parameter_identity, cross_sphere_check,
    double_count_check, eigen_identity_check, sphere_count_check_all, pair_product_check,
    verify_m_ovoid, OvoidCertificate, VerifyOutcome,
};
use dualpolar::polar::{form_make, Family};
use dualpolar::scheme::{eigendata, parameters_from_geometry};
use dualpolar::search::{
    induce_permutations, search, Completion, Mode, SearchOptions, GROUP_CAVEAT,
};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "dualpolar",
    about = "Dual polar spaces, their m-ovoids, and exact searches",
    long_about = "Constructs the dual polar spaces DQ(2d,q), DW(2d-1,q) and DH(2d-1,q^2), \
checks their counting identities, and runs exact searches for m-ovoids. \
All point and line indices in files and reports are 0-based.",
    version
)]
struct Cli {
    /// Seed for every sampled check.
    #[arg(long, global = true, default_value_t = 12345)]
    seed: u64,
    /// Worker threads for the search.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    Dq,
    Dw,
    Dh,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    First,
    All,
}

#[derive(Subcommand)]
enum Cmd {
    /// Construct a dual polar space and write it as a .npg file.
    Build {
        /// dq = parabolic quadric, dw = symplectic, dh = hermitian.
        #[arg(long)]
        family: FamilyArg,
        /// Witt index d; the space has diameter d.
        #[arg(long)]
        rank: usize,
        /// Base field order (for dh the form lives over GF(q^2)).
        #[arg(long)]
        q: u32,
        #[arg(short, long)]
        out: PathBuf,
    },
    /// Print the regular near-polygon parameters and spectrum.
    Params { geom: PathBuf },
    /// Feasibility conditions: the two-parameter identity, interval
    /// bounds on t_i + 1, and the admissible m values.
    Check { geom: PathBuf },
    /// Verify that a point set meets every line in exactly m points.
    Verify { geom: PathBuf, ovoid: PathBuf },
    /// Run the full battery of exact counting identities on an m-ovoid.
    Invariants { geom: PathBuf, ovoid: PathBuf },
    /// Exact search for m-ovoids, optionally reduced by a prescribed
    /// symmetry group.
    Search {
        geom: PathBuf,
        #[arg(short)]
        m: u32,
        #[arg(long, value_enum, default_value_t = ModeArg::First)]
        mode: ModeArg,
        /// Matrix generators (.grp) whose induced point permutations the
        /// searched sets must be invariant under.
        #[arg(long)]
        group: Option<PathBuf>,
        /// Stop after this many branch nodes.
        #[arg(long)]
        budget: Option<u64>,
        /// Journal file for stop/resume; reused if it exists.
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        /// Write the first certificate here (mode first).
        #[arg(short, long)]
        out: Option<PathBuf>,
        /// Write every certificate here as sol<N>.ovd (mode all).
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Partition m-ovoids into equivalence classes under relabeling.
    Classify {
        geom: PathBuf,
        #[arg(required = true)]
        ovoids: Vec<PathBuf>,
    },
    /// Setwise stabilizer of an m-ovoid inside the group generated by a
    /// .grp file, with element orders.
    Stabilizer {
        geom: PathBuf,
        ovoid: PathBuf,
        group: PathBuf,
        /// Cap on the group enumeration.
        #[arg(long, default_value_t = 1_000_000)]
        cap: usize,
    },
}

/// A report-level failure with its process exit code.
struct Failure {
    code: u8,
    msg: String,
}

fn fail(code: u8, msg: impl Into<String>) -> Failure {
    Failure { code, msg: msg.into() }
}

trait Ctx<T> {
    /// Maps any error to a format/usage failure (exit 2).
    fn input(self, what: &str) -> Result<T, Failure>;
    /// Maps any error to a property failure (exit 1).
    fn property(self, what: &str) -> Result<T, Failure>;
}

impl<T, E: std::fmt::Display> Ctx<T> for Result<T, E> {
    fn input(self, what: &str) -> Result<T, Failure> {
        self.map_err(|e| fail(2, format!("{what}: {e}")))
    }
    fn property(self, what: &str) -> Result<T, Failure> {
        self.map_err(|e| fail(1, format!("{what}: {e}")))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}

fn family_of(tag: FamilyArg) -> Family {
    match tag {
        FamilyArg::Dq => Family::Q,
        FamilyArg::Dw => Family::W,
        FamilyArg::Dh => Family::H,
    }
}

/// Reconstructs the geometry named in a .npg header with its form data
/// attached, and insists the file matches the construction byte for byte.
/// Matrix group actions are only meaningful on the built object.
fn rebuild_with_forms(g: &Geometry) -> Result<Geometry, Failure> {
    let family = match g.family.as_str() {
        "dq" => Family::Q,
        "dw" => Family::W,
        "dh" => Family::H,
        other => return Err(fail(2, format!("unknown family tag `{other}`"))),
    };
    let fs = form_make(family, g.d as usize, g.q).input("rebuilding form")?;
    let built = build_dual_polar(fs).input("rebuilding geometry")?;
    if built.hash_hex != g.hash_hex {
        return Err(fail(
            2,
            format!(
                "geometry file does not match the canonical construction of {} \
                 (hash {} vs {}); matrix generators cannot act on it",
                built.name, g.hash_hex, built.hash_hex
            ),
        ));
    }
    Ok(built)
}

fn load_geometry(path: &PathBuf) -> Result<Geometry, Failure> {
    load_npg(path).input(&format!("loading {}", path.display()))
}

fn load_certificate(
    g: &Geometry,
    path: &PathBuf,
) -> Result<OvoidCertificate, Failure> {
    let data = read_ovd(path).input(&format!("loading {}", path.display()))?;
    if data.geom != g.hash_hex {
        return Err(fail(
            2,
            format!(
                "{} is bound to geometry {} but the loaded geometry hashes to {}",
                path.display(),
                data.geom,
                g.hash_hex
            ),
        ));
    }
    let cert = certify(g, data.members).property("certificate rejected")?;
    if cert.m != data.m {
        return Err(fail(
            1,
            format!("file declares m={} but the set meets lines in {} points", data.m, cert.m),
        ));
    }
    Ok(cert)
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.cmd {
        Cmd::Build { family, rank, q, out } => {
            let fs = form_make(family_of(family), rank, q).input("parameters")?;
            let g = build_dual_polar(fs).input("construction")?;
            let ps = parameters_from_geometry(&g).property("construction is not a regular near polygon")?;
            println!("name {}", g.name);
            println!("n {}", g.n);
            println!("lines {}", g.lines.len());
            println!("points-per-line {}", ps.s + 1);
            println!("lines-per-point {}", ps.t() + 1);
            println!("hash {}", g.hash_hex);
            write_npg(&out, &g.to_npg()).input("writing output")?;
            println!("wrote {}", out.display());
            Ok(())
        }

        Cmd::Params { geom } => {
            let g = load_geometry(&geom)?;
            let ps = parameters_from_geometry(&g).property("not a regular near polygon")?;
            let k = ps.k().property("parameters")?;
            println!("name {}", g.name);
            println!("n {}", g.n);
            println!("lines {}", g.lines.len());
            println!("parameters {ps}");
            println!("i    t_i    c_i    a_i    b_i    k_i");
            for i in 0..=ps.d {
                println!(
                    "{i}    {}    {}    {}    {}    {}",
                    ps.t_seq[i],
                    ps.c(i),
                    ps.a(i),
                    ps.b(i),
                    k[i]
                );
            }
            let ed = eigendata(&ps).property("spectrum")?;
            for j in 0..ed.theta.len() {
                match ed.theta_exact[j] {
                    Some(v) => println!("eigenvalue {v} multiplicity {:.4}", ed.mult[j]),
                    None => println!("eigenvalue {:.8} multiplicity {:.4}", ed.theta[j], ed.mult[j]),
                }
            }
            Ok(())
        }

        Cmd::Check { geom } => {
            let g = load_geometry(&geom)?;
            let ps = parameters_from_geometry(&g).property("not a regular near polygon")?;
            let hyp = check_two_parameter_identity(&ps);
            if hyp.is_empty() {
                println!("two-parameter identity holds at: none");
            } else {
                let list: Vec<String> = hyp.iter().map(|i| i.to_string()).collect();
                println!("two-parameter identity holds at: i = {}", list.join(", "));
            }
            let mut violated = false;
            for b in check_parameter_bounds(&ps) {
                let mut marks = String::new();
                if b.lower_attained {
                    marks.push_str(" lower-attained");
                }
                if b.upper_attained {
                    marks.push_str(" upper-attained");
                }
                if b.violated {
                    marks.push_str(" VIOLATED");
                    violated = true;
                }
                println!(
                    "bound i={}: {:.4} <= t_{}+1 = {} <= {:.4}{marks}",
                    b.i, b.lower, b.i, b.value, b.upper
                );
            }
            let adm = admissible_m(&ps);
            if adm.is_empty() {
                println!("admissible m: none");
            } else {
                let list: Vec<String> = adm.iter().map(|m| m.to_string()).collect();
                println!("admissible m: {}", list.join(", "));
            }
            if violated {
                return Err(fail(1, "a parameter bound is violated"));
            }
            Ok(())
        }

        Cmd::Verify { geom, ovoid } => {
            let g = load_geometry(&geom)?;
            let data = read_ovd(&ovoid).input(&format!("loading {}", ovoid.display()))?;
            if data.geom != g.hash_hex {
                return Err(fail(
                    2,
                    format!(
                        "{} is bound to geometry {} but the loaded geometry hashes to {}",
                        ovoid.display(),
                        data.geom,
                        g.hash_hex
                    ),
                ));
            }
            match verify_m_ovoid(&g, &data.members).property("verification")? {
                VerifyOutcome::Constant(m) => {
                    if m != data.m {
                        return Err(fail(
                            1,
                            format!("file declares m={} but every line carries {m}", data.m),
                        ));
                    }
                    println!("verified: m={m}, {} points, geometry {}", data.members.len(), g.name);
                    Ok(())
                }
                VerifyOutcome::Offending { line, count, reference, expected } => Err(fail(
                    1,
                    format!(
                        "not an m-ovoid: line {line} carries {count} members, \
                         line {reference} carries {expected}"
                    ),
                )),
            }
        }

        Cmd::Invariants { geom, ovoid } => {
            let g = load_geometry(&geom)?;
            let cert = load_certificate(&g, &ovoid)?;
            let ps = parameters_from_geometry(&g).property("not a regular near polygon")?;
            println!("geometry {} m {} points {}", g.name, cert.m, cert.members.len());

            sphere_count_check_all(&g, &ps, &cert, cli.seed).property("sphere-counts")?;
            println!("ok sphere-counts");
            eigen_identity_check(&g, &cert).property("degree-identity")?;
            println!("ok degree-identity");
            cross_sphere_check(&g, &ps, &cert, cli.seed).property("cross-sphere")?;
            println!("ok cross-sphere");
            for i in 2..=ps.d {
                double_count_check(&g, &cert, i, cli.seed).property("double-count")?;
                println!("ok double-count i={i}");
            }
            for i in check_two_parameter_identity(&ps) {
                if i < 3 {
                    continue;
                }
                let rep = pair_product_check(&g, &ps, &cert, i, cli.seed).property("pair-product")?;
                println!(
                    "ok pair-product i={} mu {}/{} over {} pairs",
                    rep.i, rep.mu_num, rep.mu_den, rep.pairs_checked
                );
            }
            println!("all invariants hold");
            Ok(())
        }

        Cmd::Search { geom, m, mode, group, budget, checkpoint, out, out_dir } => {
            let loaded = load_geometry(&geom)?;
            let (g, prescribed) = match &group {
                None => (loaded, None),
                Some(path) => {
                    let built = rebuild_with_forms(&loaded)?;
                    let data = read_grp(path).input(&format!("loading {}", path.display()))?;
                    let fs = &built.subspaces.as_ref().expect("built geometry keeps forms").space;
                    let gens = load_group(fs, &data).input("group generators")?;
                    let pg = induce_permutations(&built, &gens).input("group action")?;
                    (built, Some(pg))
                }
            };
            let mode = match mode {
                ModeArg::First => Mode::First,
                ModeArg::All => Mode::All,
            };
            let group_used = prescribed.is_some();
            if let Some(pg) = &prescribed {
                println!("prescribed group: {} generators, {} orbits", pg.perms.len(), pg.orbit_count());
            }
            let opts = SearchOptions {
                mode: Some(mode),
                group: prescribed,
                node_budget: budget,
                checkpoint,
                threads: cli.threads,
            };
            let outcome = search(&g, m, &opts).input("search")?;
            println!(
                "completion {}",
                match outcome.completion {
                    Completion::Exhausted => "EXHAUSTED",
                    Completion::BudgetExceeded => "BUDGET-EXCEEDED",
                    Completion::FirstFound => "FIRST-FOUND",
                }
            );
            println!(
                "nodes {} assignments {} tasks {}/{}",
                outcome.stats.nodes,
                outcome.stats.assignments,
                outcome.stats.tasks_done,
                outcome.stats.tasks
            );
            println!("certificates {}", outcome.certificates.len());
            if outcome.completion == Completion::Exhausted && group_used {
                println!("{GROUP_CAVEAT}");
            }
            for cert in &outcome.certificates {
                let mut line = String::from("sol");
                for &p in &cert.members {
                    line.push(' ');
                    line.push_str(&p.to_string());
                }
                println!("{line}");
            }
            if let Some(dir) = &out_dir {
                std::fs::create_dir_all(dir).input("creating output directory")?;
                for (i, cert) in outcome.certificates.iter().enumerate() {
                    let path = dir.join(format!("sol{i}.ovd"));
                    let data = OvdData {
                        geom: g.hash_hex.clone(),
                        m,
                        members: cert.members.clone(),
                    };
                    write_ovd(&path, &data).input("writing certificate")?;
                    println!("wrote {}", path.display());
                }
            }
            if let Some(path) = &out {
                if let Some(cert) = outcome.certificates.first() {
                    let data = OvdData {
                        geom: g.hash_hex.clone(),
                        m,
                        members: cert.members.clone(),
                    };
                    write_ovd(path, &data).input("writing certificate")?;
                    println!("wrote {}", path.display());
                }
            }
            match outcome.completion {
                Completion::BudgetExceeded => Err(fail(3, "node budget exceeded")),
                Completion::FirstFound => Ok(()),
                Completion::Exhausted if !outcome.certificates.is_empty() => Ok(()),
                Completion::Exhausted => Err(fail(1, "exhausted with no certificates")),
            }
        }

        Cmd::Classify { geom, ovoids } => {
            let g = load_geometry(&geom)?;
            let mut certs = Vec::with_capacity(ovoids.len());
            for path in &ovoids {
                certs.push(load_certificate(&g, path)?);
            }
            let cl = classify(&g, &certs).property("classification")?;
            println!("inputs {}", certs.len());
            println!("classes {}", cl.classes.len());
            for (c, members) in cl.classes.iter().enumerate() {
                let files: Vec<String> =
                    members.iter().map(|&i| ovoids[i].display().to_string()).collect();
                println!("class {c} digest {}: {}", &cl.digests[c][..16], files.join(" "));
            }
            Ok(())
        }

        Cmd::Stabilizer { geom, ovoid, group, cap } => {
            let loaded = load_geometry(&geom)?;
            let built = rebuild_with_forms(&loaded)?;
            let cert = load_certificate(&built, &ovoid)?;
            let data = read_grp(&group).input(&format!("loading {}", group.display()))?;
            let fs = &built.subspaces.as_ref().expect("built geometry keeps forms").space;
            let gens = load_group(fs, &data).input("group generators")?;
            let pg = induce_permutations(&built, &gens).input("group action")?;
            let rep = stabilizer_in_group(built.n, &cert.members, &pg.perms, cap)
                .property("stabilizer")?;
            println!("group order {}", rep.group_order);
            println!("stabilizer order {}", rep.order);
            let orders: Vec<String> =
                rep.element_orders.iter().map(|(o, k)| format!("{o}^{k}")).collect();
            println!("element orders {}", orders.join(" "));
            Ok(())
        }
    }
}
