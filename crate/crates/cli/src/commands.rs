use gwloc::algebra::{Field, Rational};
use gwloc::gkm::{Target, WeightAssignment};
use gwloc::graph::{enumerate_cached, CacheError, CacheKey, CacheStatus, Degree, GraphCache, GraphWithSymmetry};
use gwloc::localization::{
    edge_bundle_oracle, expected_codimension, gr_invariant_with, twisted_pp_invariant_with, with_reseed,
    LocalizationError, PreparedSum,
};
use gwloc::schubert::{martin_check, partitions_in_box, Partition2};
use gwloc::weyl::{class_invariance_check, class_sum, group_classes, halfedge_census, WeylClass, WeylError};

use crate::record::{Check, JobConfig, ResultRecord};
use crate::{parse_insertion, CliError, Format, JobArgs, Suite, TargetArg};
use crate::{EXIT_CORRESPONDENCE, EXIT_INTERNAL, EXIT_VERIFY};

pub(crate) type Output = (Vec<ResultRecord>, Vec<Check>, i32);
type Family = ((u32, u32), Vec<GraphWithSymmetry>);

pub(crate) struct Context {
    pub config: JobConfig,
    args: JobArgs,
    insertions: Vec<Partition2>,
    cache: Option<GraphCache>,
}

fn loc_err(e: LocalizationError) -> CliError {
    match e {
        LocalizationError::InsertionCount { .. }
        | LocalizationError::InvalidInput(_)
        | LocalizationError::Schubert(_)
        | LocalizationError::Target(_)
        | LocalizationError::WrongTarget => CliError::Config(e.to_string()),
        e => CliError::Internal(e.to_string()),
    }
}

fn weyl_err(e: WeylError) -> CliError {
    match e {
        WeylError::Localization(e) => loc_err(e),
        e => CliError::Internal(e.to_string()),
    }
}

fn show(t: &[Partition2]) -> String {
    t.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(" ")
}

fn multisets(basis: &[Partition2], m: usize) -> Vec<Vec<Partition2>> {
    let mut out = vec![Vec::new()];
    for _ in 0..m {
        out = out
            .into_iter()
            .flat_map(|t: Vec<Partition2>| {
                let start = t.last().map_or(0, |p| basis.iter().position(|q| q == p).unwrap());
                basis[start..].iter().map(move |&p| {
                    let mut t = t.clone();
                    t.push(p);
                    t
                })
            })
            .collect();
    }
    out
}

impl Context {
    pub fn new(args: &JobArgs, command: &str) -> Result<Self, CliError> {
        let target = match args.target {
            TargetArg::Gr => Target::Grassmannian,
            TargetArg::Pp => Target::ProductPP,
            TargetArg::Proj => Target::Projective,
        };
        let min_n = if command == "enumerate" { target.min_n() } else { 3 };
        if args.n < min_n {
            return Err(CliError::Config(format!("n = {} is below {min_n}", args.n)));
        }
        let insertions = args
            .insert
            .iter()
            .map(|s| parse_insertion(s, args.n))
            .collect::<Result<Vec<_>, _>>()?;
        if let Some(m) = args.m {
            if !insertions.is_empty() && m != insertions.len() {
                return Err(CliError::Config(format!(
                    "--m {m} but {} insertions given",
                    insertions.len()
                )));
            }
        }
        let degree = match (args.d, args.d1, args.d2) {
            (Some(d), None, None) => vec![d],
            (None, Some(a), Some(b)) => vec![a, b],
            (None, None, None) => Vec::new(),
            _ => return Err(CliError::Config("give either --d or both --d1 and --d2".into())),
        };
        let config = JobConfig {
            command: command.to_string(),
            target: (command == "enumerate").then(|| format!("{target}")),
            n: args.n,
            degree,
            m: args.m.unwrap_or(insertions.len()),
            insertions: insertions.iter().map(|p| format!("{},{}", p.mu1(), p.mu2())).collect(),
            seed: args.seed,
            cache_dir: args.cache_dir.as_ref().map(|p| p.display().to_string()),
            format: match args.format {
                Format::Json => "json".into(),
                Format::Csv => "csv".into(),
            },
            verbosity: args.verbose,
        };
        Ok(Context {
            config,
            args: args.clone(),
            insertions,
            cache: args.cache_dir.as_ref().map(GraphCache::new),
        })
    }

    fn n(&self) -> u32 {
        self.args.n
    }

    fn total_degree(&self, default: Option<u32>) -> Result<u32, CliError> {
        match (self.args.d, self.args.d1, self.args.d2) {
            (Some(d), _, _) => Ok(d),
            (None, Some(a), Some(b)) => Ok(a + b),
            _ => default.ok_or_else(|| CliError::Config("--d is required".into())),
        }
    }

    fn m(&self, default: usize) -> usize {
        match self.args.m {
            Some(m) => m,
            None if !self.insertions.is_empty() => self.insertions.len(),
            None => default,
        }
    }

    /// The given tuple, or every tuple of the right codimension.
    fn tuples(&self, d: u32, m: usize) -> Vec<Vec<Partition2>> {
        if !self.insertions.is_empty() {
            return vec![self.insertions.clone()];
        }
        let need = expected_codimension(self.n(), d, m);
        multisets(&partitions_in_box(self.n()).expect("n checked"), m)
            .into_iter()
            .filter(|t| t.iter().map(|p| p.codimension() as i64).sum::<i64>() == need)
            .collect()
    }

    fn graphs(
        &self,
        target: Target,
        degree: Degree,
        m: usize,
    ) -> Result<(Vec<GraphWithSymmetry>, CacheStatus), CliError> {
        let key = CacheKey {
            target,
            n: self.n(),
            degree,
            m,
        };
        let r = enumerate_cached(self.cache.as_ref(), &key).map_err(|e| match e {
            CacheError::Corrupt(_) | CacheError::KeyMismatch => CliError::Cache(e.to_string()),
            CacheError::Graph(g) => CliError::Config(g.to_string()),
            e => CliError::Internal(e.to_string()),
        })?;
        if self.args.verbose > 0 {
            eprintln!(
                "{target} n={} {degree:?} m={m}: {} graphs ({:?})",
                self.n(),
                r.0.len(),
                r.1
            );
        }
        Ok(r)
    }

    fn pp_families(&self, d: u32, m: usize) -> Result<Vec<Family>, CliError> {
        (0..=d)
            .map(|d1| {
                Ok((
                    (d1, d - d1),
                    self.graphs(Target::ProductPP, Degree::Bi(d1, d - d1), m)?.0,
                ))
            })
            .collect()
    }
}

fn status(s: CacheStatus) -> String {
    match s {
        CacheStatus::Hit => "hit",
        CacheStatus::Miss => "miss",
        CacheStatus::Disabled => "disabled",
    }
    .to_string()
}

pub(crate) fn gr(ctx: &Context) -> Result<Output, CliError> {
    let d = ctx.total_degree(None)?;
    let m = ctx.m(3);
    let (graphs, cache) = ctx.graphs(Target::Grassmannian, Degree::Total(d), m)?;
    let mut records = Vec::new();
    let mut integral = true;
    for t in ctx.tuples(d, m) {
        let v = gr_invariant_with(&graphs, ctx.n(), d, &t, ctx.args.seed).map_err(loc_err)?;
        integral &= v.is_integer();
        let mut r = ResultRecord::new(format!("Gr(2,{}) d={d} [{}]", ctx.n(), show(&t))).value("gr", v);
        r.graph_count = Some(graphs.len() as u64);
        r.cache = Some(status(cache));
        records.push(r);
    }
    let checks = vec![Check {
        name: "integrality".into(),
        pass: integral,
        detail: format!("tuples checked: {}", records.len()),
    }];
    Ok((records, checks, EXIT_INTERNAL))
}

pub(crate) fn twisted(ctx: &Context) -> Result<Output, CliError> {
    let (Some(d1), Some(d2)) = (ctx.args.d1, ctx.args.d2) else {
        return Err(CliError::Config("twisted needs --d1 and --d2".into()));
    };
    let m = ctx.m(3);
    let (graphs, cache) = ctx.graphs(Target::ProductPP, Degree::Bi(d1, d2), m)?;
    let mut records = Vec::new();
    for t in ctx.tuples(d1 + d2, m) {
        let v = twisted_pp_invariant_with(&graphs, ctx.n(), (d1, d2), &t, ctx.args.seed, ctx.args.t_report)
            .map_err(loc_err)?;
        let mut r = ResultRecord::new(format!("(P^{})^2 ({d1},{d2}) [{}]", ctx.n() - 1, show(&t)))
            .value("t=0", v.value_at_zero);
        r.graph_count = Some(graphs.len() as u64);
        r.cache = Some(status(cache));
        r.detail = v.total.map(|f| format!("total(t) = {f}"));
        records.push(r);
    }
    Ok((records, Vec::new(), EXIT_INTERNAL))
}

struct Sides {
    gr: Rational,
    pp: Rational,
    per_bidegree: Vec<((u32, u32), Rational)>,
}

fn both_sides(
    ctx: &Context,
    gr_graphs: &[GraphWithSymmetry],
    families: &[Family],
    d: u32,
    t: &[Partition2],
    seed: u64,
) -> Result<Sides, CliError> {
    let n = ctx.n();
    let gr = gr_invariant_with(gr_graphs, n, d, t, seed).map_err(loc_err)?;
    let mut per_bidegree = Vec::new();
    for (bi, graphs) in families {
        let v = if ctx.args.disable_twist {
            let w = WeightAssignment::random(n, seed);
            PreparedSum::new(graphs, &w, false)
                .and_then(|s| s.evaluate(t))
                .map_err(loc_err)?
        } else {
            twisted_pp_invariant_with(graphs, n, *bi, t, seed, false)
                .map_err(loc_err)?
                .value_at_zero
        };
        per_bidegree.push((*bi, v));
    }
    let pp = Rational::sum(per_bidegree.iter().map(|(_, v)| v.clone())) / Rational::from_i64(2);
    Ok(Sides { gr, pp, per_bidegree })
}

pub(crate) fn correspondence(ctx: &Context) -> Result<Output, CliError> {
    let d = ctx.total_degree(None)?;
    let m = ctx.m(3);
    let (gr_graphs, _) = ctx.graphs(Target::Grassmannian, Degree::Total(d), m)?;
    let families = ctx.pp_families(d, m)?;
    let mut records = Vec::new();
    let mut failed = 0;
    for t in ctx.tuples(d, m) {
        let s = both_sides(ctx, &gr_graphs, &families, d, &t, ctx.args.seed)?;
        let mut r = ResultRecord::new(format!("n={} d={d} [{}]", ctx.n(), show(&t)))
            .value("gr", s.gr.clone())
            .value("pp_half", s.pp.clone());
        for ((a, b), v) in s.per_bidegree {
            r = r.value(&format!("pp({a},{b})"), v);
        }
        r.graph_count = Some((gr_graphs.len() + families.iter().map(|f| f.1.len()).sum::<usize>()) as u64);
        r.pass = Some(s.gr == s.pp);
        failed += (s.gr != s.pp) as usize;
        records.push(r);
    }
    let checks = vec![Check {
        name: "correspondence".into(),
        pass: failed == 0,
        detail: format!("{failed} of {} tuples differ", records.len()),
    }];
    Ok((records, checks, EXIT_CORRESPONDENCE))
}

pub(crate) fn verify(ctx: &Context, suite: Suite) -> Result<Output, CliError> {
    let (records, checks) = match suite {
        Suite::Martin => martin(ctx),
        Suite::Vanishing => vanishing(ctx, false)?,
        Suite::Census => vanishing(ctx, true)?,
        Suite::LambdaIndependence => lambda_independence(ctx)?,
        Suite::EdgeLemma => edge_lemma(ctx)?,
    };
    Ok((records, checks, EXIT_VERIFY))
}

fn martin(ctx: &Context) -> (Vec<ResultRecord>, Vec<Check>) {
    let n = ctx.n();
    let basis = partitions_in_box(n).expect("n checked");
    let mut records = Vec::new();
    let mut failed = 0;
    for m in 1..=4 {
        for t in multisets(&basis, m) {
            if t.iter().map(|p| p.codimension()).sum::<u32>() != 2 * (n - 2) {
                continue;
            }
            let r = martin_check(&t, n);
            failed += !r.equal as usize;
            let mut rec = ResultRecord::new(format!("[{}]", show(&t)))
                .value("gr", Rational::from_i64(r.lhs))
                .value("pp_half", r.rhs);
            rec.pass = Some(r.equal);
            records.push(rec);
        }
    }
    let check = Check {
        name: "martin".into(),
        pass: failed == 0,
        detail: format!("{failed} of {} tuples differ", records.len()),
    };
    (records, vec![check])
}

fn diagonal_classes(ctx: &Context, d: u32, m: usize) -> Result<(usize, Vec<WeylClass>), CliError> {
    let all: Vec<GraphWithSymmetry> = ctx.pp_families(d, m)?.into_iter().flat_map(|f| f.1).collect();
    Ok((all.len(), group_classes(&all).map_err(weyl_err)?))
}

fn vanishing(ctx: &Context, census_only: bool) -> Result<(Vec<ResultRecord>, Vec<Check>), CliError> {
    let d = ctx.total_degree(Some(1))?;
    let m = ctx.m(0);
    let ins = if ctx.insertions.is_empty() {
        vec![Partition2::empty(); m]
    } else {
        ctx.insertions.clone()
    };
    let (count, classes) = diagonal_classes(ctx, d, m)?;
    let mut summary = ResultRecord::new(format!("(P^{})^2 d={d} m={m}", ctx.n() - 1));
    summary.graph_count = Some(count as u64);
    summary.weyl_classes = Some(classes.len() as u64);
    let mut records = vec![summary];
    let mut failed = 0;
    for class in classes.iter().filter(|c| c.touches_diagonal()) {
        let mut r = ResultRecord::new(class.base().graph.to_string());
        r.graph_count = Some(class.len() as u64);
        let pass = if census_only {
            let c = halfedge_census(class).map_err(weyl_err)?;
            let nu: Vec<String> = c.nu.iter().map(|(j, k)| format!("{j}:{k}")).collect();
            r.detail = Some(format!(
                "nu={{{}}} valences={:?} bound={}",
                nu.join(","),
                c.valences,
                c.bound
            ));
            c.inequality_holds
        } else {
            let s = with_reseed(ctx.args.seed, ctx.n(), d, |w| {
                class_invariance_check(class, &ins, w).map_err(to_loc)?;
                class_sum(class, &ins, w).map_err(to_loc)
            })
            .map_err(loc_err)?;
            r.detail = Some(match (s.singular, s.net_valuation) {
                (true, Some(v)) => format!("singular, t-valuation {v}"),
                (false, Some(v)) => format!("t-valuation {v}"),
                (_, None) => "no diagonal".into(),
            });
            let ok = s.value_at_zero.is_zero() && s.net_valuation.is_some_and(|v| v >= 2);
            r = r.value("class_sum", s.value_at_zero);
            ok
        };
        failed += !pass as usize;
        r.pass = Some(pass);
        records.push(r);
    }
    let check = Check {
        name: if census_only { "census" } else { "vanishing" }.into(),
        pass: failed == 0,
        detail: format!("{failed} of {} diagonal classes fail", records.len() - 1),
    };
    Ok((records, vec![check]))
}

fn to_loc(e: WeylError) -> LocalizationError {
    match e {
        WeylError::Localization(e) => e,
        e => LocalizationError::OracleMismatch(e.to_string()),
    }
}

fn lambda_independence(ctx: &Context) -> Result<(Vec<ResultRecord>, Vec<Check>), CliError> {
    let d = ctx.total_degree(Some(1))?;
    let m = ctx.m(3);
    let (gr_graphs, _) = ctx.graphs(Target::Grassmannian, Degree::Total(d), m)?;
    let families = ctx.pp_families(d, m)?;
    let seeds: Vec<u64> = (0..ctx.args.seeds.max(1) as u64)
        .map(|i| ctx.args.seed.wrapping_add(i))
        .collect();
    let mut records = Vec::new();
    let mut failed = 0;
    for t in ctx.tuples(d, m) {
        let mut r = ResultRecord::new(format!("n={} d={d} [{}]", ctx.n(), show(&t)));
        let mut seen: Option<(Rational, Rational)> = None;
        let mut same = true;
        for &seed in &seeds {
            let s = both_sides(ctx, &gr_graphs, &families, d, &t, seed)?;
            r = r
                .value(&format!("gr@{seed}"), s.gr.clone())
                .value(&format!("pp_half@{seed}"), s.pp.clone());
            match &seen {
                None => seen = Some((s.gr, s.pp)),
                Some(first) => same &= *first == (s.gr, s.pp),
            }
        }
        failed += !same as usize;
        r.pass = Some(same);
        records.push(r);
    }
    let check = Check {
        name: "lambda-independence".into(),
        pass: failed == 0,
        detail: format!("{} seeds, {failed} of {} tuples vary", seeds.len(), records.len()),
    };
    Ok((records, vec![check]))
}

fn edge_lemma(ctx: &Context) -> Result<(Vec<ResultRecord>, Vec<Check>), CliError> {
    let d_max = ctx.total_degree(Some(6))?;
    let mut records = Vec::new();
    let mut failed = 0;
    for d in 0..=d_max {
        let mut bad = 0;
        for i in 0..100u64 {
            let w = WeightAssignment::random(2, ctx.args.seed.wrapping_add(i));
            let c0 = w.first()[0].clone();
            let cinf = if d == 0 { c0.clone() } else { w.first()[1].clone() };
            let sign = if d % 2 == 1 { 1 } else { -1 };
            let closed = Rational::from_i64(sign) * c0.clone() * cinf.clone();
            match edge_bundle_oracle(d, &c0, &cinf) {
                Ok(v) if v == closed => {}
                _ => bad += 1,
            }
        }
        failed += bad;
        let mut r = ResultRecord::new(format!("d={d}"));
        r.pass = Some(bad == 0);
        r.detail = Some(format!("{bad} of 100 weight pairs fail"));
        records.push(r);
    }
    let check = Check {
        name: "edge-lemma".into(),
        pass: failed == 0,
        detail: format!("{failed} failures"),
    };
    Ok((records, vec![check]))
}

pub(crate) fn enumerate(ctx: &Context) -> Result<Output, CliError> {
    let (target, degree) = match ctx.args.target {
        TargetArg::Pp => match (ctx.args.d1, ctx.args.d2) {
            (Some(a), Some(b)) => (Target::ProductPP, Degree::Bi(a, b)),
            _ => return Err(CliError::Config("(P^{n-1})^2 needs --d1 and --d2".into())),
        },
        TargetArg::Gr => (Target::Grassmannian, Degree::Total(ctx.total_degree(None)?)),
        TargetArg::Proj => (Target::Projective, Degree::Total(ctx.total_degree(None)?)),
    };
    let m = ctx.m(0);
    let (graphs, cache) = ctx.graphs(target, degree, m)?;
    let inverse_aut = Rational::sum(
        graphs
            .iter()
            .map(|g| Rational::from_i64(1) / Rational::from_i64(g.aut_order as i64)),
    );
    let mut r = ResultRecord::new(format!("{target} n={} {} m={m}", ctx.n(), degree_label(degree)))
        .value("sum_inverse_aut", inverse_aut);
    r.graph_count = Some(graphs.len() as u64);
    r.cache = Some(status(cache));
    Ok((vec![r], Vec::new(), EXIT_INTERNAL))
}

fn degree_label(d: Degree) -> String {
    match d {
        Degree::Total(d) => format!("d={d}"),
        Degree::Bi(a, b) => format!("d=({a},{b})"),
    }
}
