//! Exact feasibility search for m-ovoids: depth-first with constraint
//! propagation, optional orbit reduction under a prescribed group, node
//! budgets, and a resumable checkpoint journal.
//!
//! Two families of forcing rules run to fixpoint. Line rules: a line with
//! m chosen members excludes its undecided points, a line with s+1-m
//! exclusions pulls the rest in, and overshoot either way is a conflict.
//! Degree rules: summing the line constraints through one point gives
//! |Gamma_1(x) meet O| = (t+1)(m-1) for x in O and (t+1)m for x outside,
//! an exact target usable the same way. The degree identity follows from
//! the line constraints alone (lines through x partition its neighbors),
//! so propagation stays sound and the solution set is untouched.
//!
//! The root of the tree is split breadth-first into a deterministic task
//! list; tasks feed workers one by one and double as checkpoint units.
//! Within a task the branch variable is the lowest undecided point on the
//! line with fewest undecided points (lowest line index on ties), trying
//! membership before exclusion. Everything downstream of the options is a
//! pure function of the geometry, so traces replay exactly.

use crate::files::sha256_hex;
use crate::geometry::Geometry;
use crate::group::{induced_point_perm, orbits, GroupError, MatGen, Perm};
use crate::ovoid::{certify, OvoidCertificate};
use std::collections::HashSet;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::sync::Mutex;
use thiserror::Error;

/// Printed with every report of an exhausted group-reduced search.
pub const GROUP_CAVEAT: &str = "exhaustion is complete only within the prescribed symmetry class: \
only point sets invariant under the prescribed group were searched";

const TASK_TARGET: usize = 64;
const SPLIT_DEPTH_CAP: usize = 24;

#[derive(Debug, Error)]
pub enum SearchError {
    #[error("m = {m} outside 0..={max}")]
    BadM { m: u32, max: usize },
    #[error("prescribed group acts on {got} points, geometry has {want}")]
    GroupSize { got: usize, want: usize },
    #[error("checkpoint rejected: {0}")]
    Checkpoint(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// Point permutations prescribed for orbit reduction: solutions are
/// restricted to unions of orbits of this group.
#[derive(Debug, Clone)]
pub struct PrescribedGroup {
    pub perms: Vec<Perm>,
    pub orbit_of: Vec<u32>,
    pub orbit_members: Vec<Vec<u32>>,
}

impl PrescribedGroup {
    pub fn from_perms(g: &Geometry, perms: Vec<Perm>) -> Result<PrescribedGroup, SearchError> {
        for p in &perms {
            if p.degree() != g.n {
                return Err(SearchError::GroupSize { got: p.degree(), want: g.n });
            }
        }
        let (orbit_of, count) = orbits(&perms, g.n);
        let mut orbit_members = vec![Vec::new(); count];
        for (p, &o) in orbit_of.iter().enumerate() {
            orbit_members[o as usize].push(p as u32);
        }
        Ok(PrescribedGroup { perms, orbit_of, orbit_members })
    }

    pub fn orbit_count(&self) -> usize {
        self.orbit_members.len()
    }

    /// Digest of the induced point action, for checkpoint compatibility.
    fn digest(&self) -> String {
        let mut s = String::new();
        for p in &self.perms {
            s.push_str("perm");
            for &x in &p.0 {
                s.push(' ');
                s.push_str(&x.to_string());
            }
            s.push('\n');
        }
        sha256_hex(s.as_bytes())
    }
}

/// Builds the point action of verified matrix generators and the orbit
/// partition the search branches on.
pub fn induce_permutations(g: &Geometry, gens: &[MatGen]) -> Result<PrescribedGroup, SearchError> {
    let perms = gens
        .iter()
        .map(|mg| induced_point_perm(g, mg))
        .collect::<Result<Vec<_>, _>>()?;
    PrescribedGroup::from_perms(g, perms)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    First,
    All,
}

#[derive(Default)]
pub struct SearchOptions {
    pub mode: Option<Mode>,
    pub group: Option<PrescribedGroup>,
    pub node_budget: Option<u64>,
    pub checkpoint: Option<PathBuf>,
    pub threads: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Completion {
    /// The tree was searched to the end; with a group, complete only up to
    /// the prescribed symmetry (see GROUP_CAVEAT).
    Exhausted,
    BudgetExceeded,
    FirstFound,
}

#[derive(Debug, Default, Clone)]
pub struct SearchStats {
    pub nodes: u64,
    pub assignments: u64,
    pub max_depth: usize,
    pub tasks: usize,
    pub tasks_done: usize,
}

#[derive(Debug)]
pub struct SearchOutcome {
    pub completion: Completion,
    pub certificates: Vec<OvoidCertificate>,
    pub stats: SearchStats,
}

const UND: u8 = 0;
const IN: u8 = 1;
const OUT: u8 = 2;

/// Propagation state: point statuses plus per-line and per-point tallies
/// of decided members and non-members, with an undo trail.
pub struct Propagator<'a> {
    g: &'a Geometry,
    group: Option<&'a PrescribedGroup>,
    cap_in: u16,
    cap_out: u16,
    t_in: i64,
    t_out: i64,
    k1: i64,
    status: Vec<u8>,
    line_in: Vec<u16>,
    line_out: Vec<u16>,
    line_und: Vec<u16>,
    nbr_in: Vec<u16>,
    nbr_out: Vec<u16>,
    trail: Vec<u32>,
    pending: Vec<u32>,
    assignments: u64,
}

impl<'a> Propagator<'a> {
    pub fn new(g: &'a Geometry, m: u32, group: Option<&'a PrescribedGroup>) -> Propagator<'a> {
        let t1 = g.t_plus_1 as i64;
        let s1 = g.s_plus_1 as i64;
        Propagator {
            g,
            group,
            cap_in: m as u16,
            cap_out: (g.s_plus_1 - m as usize) as u16,
            t_in: t1 * (m as i64 - 1),
            t_out: t1 * m as i64,
            k1: (s1 - 1) * t1,
            status: vec![UND; g.n],
            line_in: vec![0; g.lines.len()],
            line_out: vec![0; g.lines.len()],
            line_und: vec![g.s_plus_1 as u16; g.lines.len()],
            nbr_in: vec![0; g.n],
            nbr_out: vec![0; g.n],
            trail: Vec::new(),
            pending: Vec::new(),
            assignments: 0,
        }
    }

    pub fn status(&self, p: u32) -> Option<bool> {
        match self.status[p as usize] {
            IN => Some(true),
            OUT => Some(false),
            _ => None,
        }
    }

    pub fn assignments(&self) -> u64 {
        self.assignments
    }

    fn assign(&mut self, p: u32, val: u8) -> bool {
        let cur = self.status[p as usize];
        if cur != UND {
            return cur == val;
        }
        self.status[p as usize] = val;
        self.trail.push(p);
        self.pending.push(p);
        self.assignments += 1;
        for &l in &self.g.point_lines[p as usize] {
            let l = l as usize;
            if val == IN {
                self.line_in[l] += 1;
            } else {
                self.line_out[l] += 1;
            }
            self.line_und[l] -= 1;
        }
        for &w in &self.g.neighbors[p as usize] {
            if val == IN {
                self.nbr_in[w as usize] += 1;
            } else {
                self.nbr_out[w as usize] += 1;
            }
        }
        true
    }

    /// Assigns a point, or its whole orbit when a group is prescribed.
    pub fn decide(&mut self, p: u32, inside: bool) -> bool {
        let val = if inside { IN } else { OUT };
        match self.group {
            None => self.assign(p, val),
            Some(gr) => {
                let members = &gr.orbit_members[gr.orbit_of[p as usize] as usize];
                members.iter().all(|&q| self.assign(q, val))
            }
        }
    }

    fn check_line(&mut self, l: usize) -> bool {
        if self.line_in[l] > self.cap_in || self.line_out[l] > self.cap_out {
            return false;
        }
        if self.line_und[l] == 0 {
            return true;
        }
        let force = if self.line_in[l] == self.cap_in {
            Some(false)
        } else if self.line_out[l] == self.cap_out {
            Some(true)
        } else {
            None
        };
        if let Some(inside) = force {
            let line = &self.g.lines[l];
            for i in 0..line.len() {
                let p = line[i];
                if self.status[p as usize] == UND && !self.decide(p, inside) {
                    return false;
                }
            }
        }
        true
    }

    fn check_point(&mut self, x: u32) -> bool {
        let ni = self.nbr_in[x as usize] as i64;
        let no = self.nbr_out[x as usize] as i64;
        let avail = self.k1 - no;
        match self.status[x as usize] {
            IN => self.enforce_target(x, ni, avail, self.t_in),
            OUT => self.enforce_target(x, ni, avail, self.t_out),
            _ => {
                // Can x still meet the member target of either side?
                if (ni > self.t_in || avail < self.t_in) && !self.decide(x, false) {
                    return false;
                }
                if (ni > self.t_out || avail < self.t_out) && !self.decide(x, true) {
                    return false;
                }
                true
            }
        }
    }

    /// Exactly `target` of x's neighbors must end up members.
    fn enforce_target(&mut self, x: u32, ni: i64, avail: i64, target: i64) -> bool {
        if ni > target || avail < target {
            return false;
        }
        let force = if ni == target {
            Some(false)
        } else if avail == target {
            Some(true)
        } else {
            None
        };
        if let Some(inside) = force {
            for i in 0..self.g.neighbors[x as usize].len() {
                let w = self.g.neighbors[x as usize][i];
                if self.status[w as usize] == UND && !self.decide(w, inside) {
                    return false;
                }
            }
        }
        true
    }

    /// Runs both rule families to fixpoint; false means conflict.
    pub fn propagate(&mut self) -> bool {
        while let Some(p) = self.pending.pop() {
            for i in 0..self.g.point_lines[p as usize].len() {
                let l = self.g.point_lines[p as usize][i] as usize;
                if !self.check_line(l) {
                    return false;
                }
            }
            if !self.check_point(p) {
                return false;
            }
            for i in 0..self.g.neighbors[p as usize].len() {
                let w = self.g.neighbors[p as usize][i];
                if !self.check_point(w) {
                    return false;
                }
            }
        }
        true
    }

    /// Initial fixpoint: every line and point rule checked once, then the
    /// cascade drained. Catches the degenerate targets of m = 0 and
    /// m = s+1 before any branching.
    pub fn root_propagate(&mut self) -> bool {
        for l in 0..self.g.lines.len() {
            if !self.check_line(l) {
                return false;
            }
        }
        for x in 0..self.g.n {
            if !self.check_point(x as u32) {
                return false;
            }
        }
        self.propagate()
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let p = self.trail.pop().unwrap();
            let val = self.status[p as usize];
            self.status[p as usize] = UND;
            for &l in &self.g.point_lines[p as usize] {
                let l = l as usize;
                if val == IN {
                    self.line_in[l] -= 1;
                } else {
                    self.line_out[l] -= 1;
                }
                self.line_und[l] += 1;
            }
            for &w in &self.g.neighbors[p as usize] {
                if val == IN {
                    self.nbr_in[w as usize] -= 1;
                } else {
                    self.nbr_out[w as usize] -= 1;
                }
            }
        }
        self.pending.clear();
    }

    /// Lowest undecided point on the line with fewest undecided points
    /// (ties to the lowest line index); None when everything is decided.
    pub fn branch_point(&self) -> Option<u32> {
        let mut best: Option<(u16, usize)> = None;
        for (l, &u) in self.line_und.iter().enumerate() {
            if u > 0 && best.map_or(true, |(bu, _)| u < bu) {
                best = Some((u, l));
                if u == 1 {
                    break;
                }
            }
        }
        let (_, l) = best?;
        self.g.lines[l].iter().copied().find(|&p| self.status[p as usize] == UND)
    }

    fn members(&self) -> Vec<u32> {
        (0..self.g.n as u32).filter(|&p| self.status[p as usize] == IN).collect()
    }
}

type Prefix = Vec<(u32, bool)>;

fn replay<'a>(
    g: &'a Geometry,
    m: u32,
    group: Option<&'a PrescribedGroup>,
    prefix: &[(u32, bool)],
) -> Option<Propagator<'a>> {
    let mut prop = Propagator::new(g, m, group);
    if !prop.root_propagate() {
        return None;
    }
    for &(p, inside) in prefix {
        if !prop.decide(p, inside) || !prop.propagate() {
            return None;
        }
    }
    Some(prop)
}

fn options_digest(m: u32, mode: Mode, group: Option<&PrescribedGroup>) -> String {
    let mode = match mode {
        Mode::First => "first",
        Mode::All => "all",
    };
    let group = group.map_or("none".to_string(), |g| g.digest());
    sha256_hex(
        format!("m={m};mode={mode};group={group};rules=line+degree;tasks={TASK_TARGET}")
            .as_bytes(),
    )
}

struct Journal {
    out: Option<Mutex<BufWriter<std::fs::File>>>,
}

impl Journal {
    fn line(&self, s: &str) {
        if let Some(m) = &self.out {
            let mut w = m.lock().unwrap();
            let _ = writeln!(w, "{s}");
            let _ = w.flush();
        }
    }
}

struct Shared {
    mode: Mode,
    nodes: AtomicU64,
    budget: u64,
    budget_hit: AtomicBool,
    stop: AtomicBool,
    sols: Mutex<Vec<Vec<u32>>>,
    journal: Journal,
}

impl Shared {
    /// Counts one branch node; false once the budget is gone.
    fn tick(&self) -> bool {
        if self.stop.load(Ordering::Relaxed) {
            return false;
        }
        let n = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if n > self.budget {
            self.budget_hit.store(true, Ordering::Relaxed);
            self.stop.store(true, Ordering::Relaxed);
            return false;
        }
        true
    }

    fn emit(&self, members: Vec<u32>) {
        let mut line = String::from("sol");
        for &p in &members {
            line.push(' ');
            line.push_str(&p.to_string());
        }
        self.journal.line(&line);
        self.sols.lock().unwrap().push(members);
        if self.mode == Mode::First {
            self.stop.store(true, Ordering::Relaxed);
        }
    }
}

struct Local {
    max_depth: usize,
    aborted: bool,
}

fn dfs(prop: &mut Propagator, shared: &Shared, local: &mut Local, depth: usize) {
    local.max_depth = local.max_depth.max(depth);
    let p = match prop.branch_point() {
        None => {
            shared.emit(prop.members());
            return;
        }
        Some(p) => p,
    };
    for inside in [true, false] {
        if !shared.tick() {
            local.aborted = true;
            return;
        }
        let mark = prop.trail.len();
        if prop.decide(p, inside) && prop.propagate() {
            dfs(prop, shared, local, depth + 1);
        }
        prop.undo_to(mark);
        if local.aborted {
            return;
        }
    }
}

struct CheckpointFile {
    tasks: Vec<Prefix>,
    done: HashSet<usize>,
    sols: Vec<Vec<u32>>,
}

fn parse_checkpoint(
    text: &str,
    geom_hash: &str,
    m: u32,
    opt_digest: &str,
) -> Result<CheckpointFile, SearchError> {
    let bad = |msg: &str| SearchError::Checkpoint(msg.to_string());
    let mut lines = text.lines();
    if lines.next() != Some("CKPT 1") {
        return Err(bad("missing CKPT 1 header"));
    }
    let expect = |line: Option<&str>, key: &str| -> Result<String, SearchError> {
        match line.and_then(|l| l.strip_prefix(key)).and_then(|r| r.strip_prefix(' ')) {
            Some(v) => Ok(v.to_string()),
            None => Err(bad(&format!("expected `{key}` line"))),
        }
    };
    let geom = expect(lines.next(), "geom")?;
    if geom != geom_hash {
        return Err(SearchError::Checkpoint(format!(
            "checkpoint is for geometry {geom}, current geometry hashes to {geom_hash}"
        )));
    }
    let file_m: u32 = expect(lines.next(), "m")?.parse().map_err(|_| bad("bad m"))?;
    if file_m != m {
        return Err(SearchError::Checkpoint(format!("checkpoint searched m = {file_m}, not {m}")));
    }
    let opts = expect(lines.next(), "options")?;
    if opts != opt_digest {
        return Err(bad("checkpoint was produced under different search options"));
    }
    let count: usize = expect(lines.next(), "tasks")?.parse().map_err(|_| bad("bad task count"))?;
    let mut tasks = vec![None; count];
    let mut done = HashSet::new();
    let mut sols = Vec::new();
    for line in lines {
        let mut toks = line.split(' ');
        match toks.next() {
            Some("task") => {
                let id: usize = toks
                    .next()
                    .and_then(|t| t.parse().ok())
                    .filter(|&i| i < count)
                    .ok_or_else(|| bad("bad task id"))?;
                let mut prefix = Vec::new();
                for t in toks {
                    let (num, inside) = match t.strip_suffix('+') {
                        Some(n) => (n, true),
                        None => (t.strip_suffix('-').ok_or_else(|| bad("bad decision token"))?, false),
                    };
                    let p: u32 = num.parse().map_err(|_| bad("bad decision token"))?;
                    prefix.push((p, inside));
                }
                tasks[id] = Some(prefix);
            }
            Some("done") => {
                let id: usize = toks
                    .next()
                    .and_then(|t| t.parse().ok())
                    .filter(|&i| i < count)
                    .ok_or_else(|| bad("bad done id"))?;
                done.insert(id);
            }
            Some("sol") => {
                let members = toks
                    .map(|t| t.parse::<u32>().map_err(|_| bad("bad solution index")))
                    .collect::<Result<Vec<u32>, _>>()?;
                sols.push(members);
            }
            Some("end") => {}
            Some("") => {}
            _ => return Err(bad("unrecognized journal line")),
        }
    }
    let tasks = tasks
        .into_iter()
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| bad("task list incomplete"))?;
    Ok(CheckpointFile { tasks, done, sols })
}

fn prefix_tokens(prefix: &[(u32, bool)]) -> String {
    let mut s = String::new();
    for &(p, inside) in prefix {
        s.push(' ');
        s.push_str(&p.to_string());
        s.push(if inside { '+' } else { '-' });
    }
    s
}

/// Splits the root into a breadth-first frontier of feasible decision
/// prefixes. Solutions hit during splitting go straight to the sink.
fn split_tasks(
    g: &Geometry,
    m: u32,
    group: Option<&PrescribedGroup>,
    shared: &Shared,
) -> Vec<Prefix> {
    let mut frontier: std::collections::VecDeque<Prefix> = std::collections::VecDeque::new();
    if replay(g, m, group, &[]).is_some() {
        frontier.push_back(Vec::new());
    }
    while frontier.len() < TASK_TARGET && !frontier.is_empty() {
        if shared.stop.load(Ordering::Relaxed) {
            break;
        }
        let prefix = frontier.pop_front().unwrap();
        if prefix.len() >= SPLIT_DEPTH_CAP {
            frontier.push_front(prefix);
            break;
        }
        let prop = replay(g, m, group, &prefix).expect("enqueued prefixes are feasible");
        let p = match prop.branch_point() {
            None => {
                shared.emit(prop.members());
                continue;
            }
            Some(p) => p,
        };
        drop(prop);
        for (ci, inside) in [true, false].into_iter().enumerate() {
            if !shared.tick() {
                // Budget died between the two children. Requeue whatever
                // is not yet covered: the whole prefix when neither child
                // was expanded, otherwise the untested second child.
                let mut rest = prefix.clone();
                if ci > 0 {
                    rest.push((p, inside));
                }
                frontier.push_back(rest);
                return frontier.into_iter().collect();
            }
            let mut child = prefix.clone();
            child.push((p, inside));
            if replay(g, m, group, &child).is_some() {
                frontier.push_back(child);
            }
        }
    }
    frontier.into_iter().collect()
}

/// Runs the search. In mode All without a budget hit the result list is
/// complete (up to the prescribed group's identification when one is
/// given); certificates are always re-verified before being returned.
pub fn search(g: &Geometry, m: u32, opts: &SearchOptions) -> Result<SearchOutcome, SearchError> {
    if m as usize > g.s_plus_1 {
        return Err(SearchError::BadM { m, max: g.s_plus_1 });
    }
    let mode = opts.mode.unwrap_or(Mode::First);
    let group = opts.group.as_ref();
    if let Some(gr) = group {
        if gr.orbit_of.len() != g.n {
            return Err(SearchError::GroupSize { got: gr.orbit_of.len(), want: g.n });
        }
    }
    let digest = options_digest(m, mode, group);

    // Resume or create the checkpoint before spending any nodes.
    let mut resumed: Option<CheckpointFile> = None;
    if let Some(path) = &opts.checkpoint {
        if path.exists() {
            let text = std::fs::read_to_string(path)?;
            resumed = Some(parse_checkpoint(&text, &g.hash_hex, m, &digest)?);
        }
    }

    let shared = Shared {
        mode,
        nodes: AtomicU64::new(0),
        budget: opts.node_budget.unwrap_or(u64::MAX),
        budget_hit: AtomicBool::new(false),
        stop: AtomicBool::new(false),
        sols: Mutex::new(Vec::new()),
        journal: Journal { out: None },
    };

    let (tasks, done) = match resumed {
        Some(ck) => {
            let mut sols = shared.sols.lock().unwrap();
            for s in ck.sols {
                sols.push(s);
            }
            drop(sols);
            if mode == Mode::First && !shared.sols.lock().unwrap().is_empty() {
                shared.stop.store(true, Ordering::Relaxed);
            }
            (ck.tasks, ck.done)
        }
        None => {
            let tasks = split_tasks(g, m, group, &shared);
            if let Some(path) = &opts.checkpoint {
                let mut text = format!(
                    "CKPT 1\ngeom {}\nm {}\noptions {}\ntasks {}\n",
                    g.hash_hex,
                    m,
                    digest,
                    tasks.len()
                );
                for (id, t) in tasks.iter().enumerate() {
                    text.push_str(&format!("task {id}{}\n", prefix_tokens(t)));
                }
                for s in shared.sols.lock().unwrap().iter() {
                    let mut line = String::from("sol");
                    for &p in s {
                        line.push(' ');
                        line.push_str(&p.to_string());
                    }
                    text.push_str(&line);
                    text.push('\n');
                }
                std::fs::write(path, text)?;
            }
            (tasks, HashSet::new())
        }
    };

    let shared = Shared {
        journal: Journal {
            out: match &opts.checkpoint {
                Some(path) => Some(Mutex::new(BufWriter::new(
                    std::fs::OpenOptions::new().append(true).open(path)?,
                ))),
                None => None,
            },
        },
        ..shared
    };

    let next = AtomicUsize::new(0);
    let threads = opts.threads.max(1);
    let tasks_done = AtomicUsize::new(done.len());
    let max_depth = AtomicUsize::new(0);
    let assignments = AtomicU64::new(0);

    std::thread::scope(|scope| {
        for _ in 0..threads {
            std::thread::Builder::new()
                .stack_size(32 << 20)
                .spawn_scoped(scope, || loop {
                    if shared.stop.load(Ordering::Relaxed) {
                        break;
                    }
                    let i = next.fetch_add(1, Ordering::Relaxed);
                    if i >= tasks.len() {
                        break;
                    }
                    if done.contains(&i) {
                        continue;
                    }
                    let mut local = Local { max_depth: 0, aborted: false };
                    if let Some(mut prop) = replay(g, m, group, &tasks[i]) {
                        let before = shared.nodes.load(Ordering::Relaxed);
                        dfs(&mut prop, &shared, &mut local, tasks[i].len());
                        assignments.fetch_add(prop.assignments(), Ordering::Relaxed);
                        if !local.aborted {
                            let used = shared.nodes.load(Ordering::Relaxed) - before;
                            shared.journal.line(&format!("done {i} {used}"));
                            tasks_done.fetch_add(1, Ordering::Relaxed);
                        }
                    } else {
                        // The prefix conflicts under current propagation
                        // even though it was feasible when split: counts as
                        // finished work either way.
                        shared.journal.line(&format!("done {i} 0"));
                        tasks_done.fetch_add(1, Ordering::Relaxed);
                    }
                    max_depth.fetch_max(local.max_depth, Ordering::Relaxed);
                })
                .expect("worker thread spawn");
        }
    });

    let mut sols = shared.sols.into_inner().unwrap();
    for s in &mut sols {
        s.sort_unstable();
    }
    sols.sort();
    sols.dedup();
    let mut certificates = Vec::with_capacity(sols.len());
    for s in sols {
        let cert = certify(g, s).expect("emitted solutions re-verify");
        assert_eq!(cert.m, m, "emitted solution has the requested weight");
        certificates.push(cert);
    }

    let completion = if mode == Mode::First && !certificates.is_empty() {
        Completion::FirstFound
    } else if shared.budget_hit.load(Ordering::Relaxed) {
        Completion::BudgetExceeded
    } else {
        Completion::Exhausted
    };
    if completion == Completion::Exhausted {
        shared.journal.line("end exhausted");
    }
    Ok(SearchOutcome {
        completion,
        certificates,
        stats: SearchStats {
            nodes: shared.nodes.load(Ordering::Relaxed),
            assignments: assignments.load(Ordering::Relaxed),
            max_depth: max_depth.load(Ordering::Relaxed),
            tasks: tasks.len(),
            tasks_done: tasks_done.load(Ordering::Relaxed),
        },
    })
}
