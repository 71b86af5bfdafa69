use std::fmt::Write as _;

use chaingreedy::chain::{
    clique_distribution_with_cap, deterministic_gap_bound, gap_weight, ChainSpec, CliqueDistribution, Engine,
    OutcomeMask,
};
use chaingreedy::coverage::{
    apply_permutation, monte_carlo_with_optimum, reference_optimum, CoverageInstance, CoverageOracle,
};
use chaingreedy::reinforce::{greedy_multi_reinforcement, sweep_single_reinforcement_with};
use chaingreedy::submodular::{decentralized_greedy, sequential_greedy, SelectionResult};

use crate::config::Settings;
use crate::error::{CliError, CliResult};
use crate::report::{num, sig6, CsvDoc, Report, Table};

fn chain_table(chain: &ChainSpec) -> String {
    let mut t = Table::new(["edge", "p0", "trials", "q"]);
    for e in 0..chain.num_edges() {
        t.row([
            (e + 1).to_string(),
            sig6(chain.base_probs()[e]),
            chain.trials()[e].to_string(),
            sig6(chain.effective_prob(e)),
        ]);
    }
    t.render()
}

fn cap_error(chain: &ChainSpec, cap: usize) -> CliError {
    CliError::Cap(format!(
        "enumeration cap exceeded: {} edges ({} outcomes), cap is {cap} edges",
        chain.num_edges(),
        1u128 << chain.num_edges()
    ))
}

/// `α_p` under every available engine, the clique-number pmf and the
/// deviation of each engine from the dp reference.
pub fn cmd_alpha(settings: &Settings) -> CliResult<Report> {
    let chain = settings.chain()?;
    let selected = settings.engine()?;
    let cap = settings.enumeration_cap();
    let enumerable = chain.num_edges() <= cap;
    if selected == Engine::Enumerate && !enumerable {
        return Err(cap_error(&chain, cap));
    }

    let dists: Vec<CliqueDistribution> = Engine::ALL
        .iter()
        .filter(|&&e| e != Engine::Enumerate || enumerable)
        .map(|&e| clique_distribution_with_cap(&chain, e, cap))
        .collect::<chaingreedy::Result<_>>()?;
    let dp = &dists[0];
    let n = chain.n();

    let mut text = String::new();
    let _ = writeln!(text, "chain: {n} agents, {} edges", chain.num_edges());
    text.push_str(&chain_table(&chain));
    text.push('\n');

    let mut summary = Table::new(["engine", "alpha_p", "alpha_dev_vs_dp", "max_pmf_dev_vs_dp"]);
    for d in &dists {
        let pmf_dev = d
            .pmf
            .iter()
            .zip(&dp.pmf)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        summary.row([
            d.engine.name().to_string(),
            sig6(d.alpha_p()),
            sig6((d.alpha_p() - dp.alpha_p()).abs()),
            sig6(pmf_dev),
        ]);
    }
    text.push_str(&summary.render());
    if !enumerable {
        let _ = writeln!(
            text,
            "(enumerate skipped: {} edges exceed the cap of {cap})",
            chain.num_edges()
        );
    }
    text.push('\n');

    let mut header = vec!["clique".to_string(), "weight".to_string()];
    header.extend(dists.iter().map(|d| format!("P(W=l) {}", d.engine)));
    let mut pmf_table = Table::new(header);
    for l in 1..=n {
        let mut row = vec![l.to_string(), sig6(gap_weight(n, l))];
        row.extend(dists.iter().map(|d| sig6(d.prob(l))));
        pmf_table.row(row);
    }
    let mut total = vec!["total".to_string(), String::new()];
    total.extend(dists.iter().map(|d| sig6(d.total())));
    pmf_table.row(total);
    text.push_str(&pmf_table.render());

    let chosen = dists
        .iter()
        .find(|d| d.engine == selected)
        .expect("selected engine computed");
    let _ = writeln!(text, "\nalpha_p ({selected}) = {}", sig6(chosen.alpha_p()));

    let mut csv = CsvDoc::new(
        "alpha/v1",
        &["engine", "clique", "weight", "probability", "alpha_p", "abs_dev_vs_dp"],
    )?;
    for d in &dists {
        for l in 1..=n {
            csv.record([
                d.engine.name().to_string(),
                l.to_string(),
                num(gap_weight(n, l)),
                num(d.prob(l)),
                num(d.alpha_p()),
                num((d.prob(l) - dp.prob(l)).abs()),
            ])?;
        }
    }
    Ok(Report {
        text,
        csv: Some(csv.finish()?),
    })
}

/// Every outcome mask with its probability and clique number.
pub fn cmd_enumerate(settings: &Settings) -> CliResult<Report> {
    let chain = settings.chain()?;
    let cap = settings.enumeration_cap();
    let m = chain.num_edges();
    if m > cap {
        return Err(cap_error(&chain, cap));
    }

    let mut table = Table::new(["mask", "probability", "clique"]);
    let mut csv = CsvDoc::new("enumerate/v1", &["mask", "probability", "clique_number"])?;
    let mut total = 0.0;
    let mut by_clique = vec![0.0; chain.n()];
    for idx in 0..1u64 << m {
        // first character is edge 1, listed in lexicographic order
        let mask = OutcomeMask::new((0..m).map(|i| idx >> (m - 1 - i) & 1 == 1).collect());
        let p = mask.probability(&chain)?;
        let w = mask.clique_number();
        total += p;
        by_clique[w - 1] += p;
        let label = if m == 0 { "-".to_string() } else { mask.to_string() };
        table.row([label.clone(), sig6(p), w.to_string()]);
        csv.record([label, num(p), w.to_string()])?;
    }
    table.row(["total".to_string(), sig6(total), String::new()]);

    let mut text = format!("chain: {} agents, {m} edges, {} outcomes\n", chain.n(), 1u64 << m);
    text.push_str(&table.render());
    text.push('\n');
    let mut pmf = Table::new(["clique", "P(W=l)"]);
    for (i, p) in by_clique.iter().enumerate() {
        pmf.row([(i + 1).to_string(), sig6(*p)]);
    }
    text.push_str(&pmf.render());
    Ok(Report {
        text,
        csv: Some(csv.finish()?),
    })
}

/// Gap with one extra trial on each edge, plus the optional greedy plan.
pub fn cmd_reinforce(settings: &Settings) -> CliResult<Report> {
    let chain = settings.chain()?;
    let engine = settings.engine()?;
    if engine == Engine::Enumerate && chain.num_edges() > settings.enumeration_cap() {
        return Err(cap_error(&chain, settings.enumeration_cap()));
    }
    let sweep = sweep_single_reinforcement_with(&chain, engine).map_err(CliError::field("chain"))?;

    let mut text = format!("chain: {} agents, {} edges\n", chain.n(), chain.num_edges());
    text.push_str(&chain_table(&chain));
    let _ = writeln!(text, "\nbaseline alpha_p ({engine}) = {}", sig6(sweep.baseline_alpha));
    let mut header = vec!["edge".to_string()];
    header.extend((1..=chain.num_edges()).map(|e| e.to_string()));
    let mut row = vec!["alpha_p".to_string()];
    row.extend(sweep.per_edge_alpha.iter().enumerate().map(|(e, a)| {
        if e == sweep.best_edge {
            format!("{}*", sig6(*a))
        } else {
            sig6(*a)
        }
    }));
    let mut t = Table::new(header);
    t.row(row);
    text.push_str(&t.render());
    let _ = writeln!(
        text,
        "best edge e* = {} (sent by position {}), alpha'_p = {}",
        sweep.best_edge + 1,
        sweep.best_edge + 1,
        sig6(sweep.best_alpha)
    );

    let mut csv = CsvDoc::new("reinforce/v1", &["kind", "round", "edge", "alpha_p", "best"])?;
    csv.record([
        "baseline".to_string(),
        String::new(),
        String::new(),
        num(sweep.baseline_alpha),
        String::new(),
    ])?;
    for (e, a) in sweep.per_edge_alpha.iter().enumerate() {
        csv.record([
            "sweep".to_string(),
            String::new(),
            (e + 1).to_string(),
            num(*a),
            u8::from(e == sweep.best_edge).to_string(),
        ])?;
    }

    if let Some(budget) = settings.budget() {
        let plan = greedy_multi_reinforcement(&chain, budget).map_err(CliError::field("budget"))?;
        let _ = writeln!(text, "\ngreedy allocation of {budget} extra trials (dp engine):");
        for (i, r) in plan.rounds.iter().enumerate() {
            let _ = writeln!(
                text,
                "round {}: edge {} -> alpha_p = {}",
                i + 1,
                r.edge + 1,
                sig6(r.alpha)
            );
            csv.record([
                "greedy".to_string(),
                (i + 1).to_string(),
                (r.edge + 1).to_string(),
                num(r.alpha),
                String::new(),
            ])?;
        }
        let extra: Vec<String> = plan.extra_trials.iter().map(u32::to_string).collect();
        let _ = writeln!(text, "extra trials per edge: [{}]", extra.join(", "));
    }
    Ok(Report {
        text,
        csv: Some(csv.finish()?),
    })
}

/// Monte Carlo utility and gap for each agent order, before and after the
/// best single reinforcement.
pub fn cmd_simulate(settings: &Settings) -> CliResult<Report> {
    let instance = settings.instance()?;
    let n = instance.num_agents();
    let orders = settings.orders(n)?;
    let iterations = settings.iterations()?;
    let engine = settings.engine()?;
    let seed = settings.seed();
    let chains = orders
        .iter()
        .map(|o| settings.chain_for(&instance, o))
        .collect::<CliResult<Vec<_>>>()?;
    if n < 2 {
        return Err(CliError::config("instance: simulate needs at least two agents"));
    }
    if engine == Engine::Enumerate && n - 1 > settings.enumeration_cap() {
        return Err(cap_error(&chains[0], settings.enumeration_cap()));
    }
    let optimum = reference_optimum(&instance, seed)?;

    let mut text = format!(
        "instance: {n} agents, {} locations, {} points, seed {}\n",
        instance.locations.len(),
        instance.points.len(),
        instance.seed
    );
    let _ = writeln!(
        text,
        "reference optimum: {} ({})\niterations: {iterations}, seed: {seed}, engine: {engine}\n",
        sig6(optimum.value),
        optimum.kind.name()
    );

    let mut main = Table::new([
        "sequence", "f", "alpha_p", "a*", "e*", "f'", "alpha'_p", "se(f)", "se(f')", "f/opt",
    ]);
    let mut header = vec!["sequence".to_string()];
    header.extend((1..n).map(|e| e.to_string()));
    let mut per_edge = Table::new(header);
    let mut csv = CsvDoc::new(
        "simulate/v1",
        &[
            "sequence",
            "mean_f",
            "se_f",
            "alpha_p",
            "best_agent",
            "best_edge",
            "mean_f_reinforced",
            "se_f_reinforced",
            "alpha_p_reinforced",
            "optimum",
            "optimum_kind",
            "empirical_gap",
            "iterations",
            "seed",
        ],
    )?;

    for (order, chain) in orders.iter().zip(&chains) {
        let base = monte_carlo_with_optimum(&instance, chain, order, iterations, seed, optimum)?;
        let sweep = sweep_single_reinforcement_with(chain, engine)?;
        let lifted_chain = chain.with_extra_trials(sweep.best_edge, 1)?;
        let lifted = monte_carlo_with_optimum(&instance, &lifted_chain, order, iterations, seed, optimum)?;
        let best_agent = agent_label(order.agent_at(sweep.best_edge), n);
        let label = order.label();
        main.row([
            label.clone(),
            sig6(base.mean_value),
            sig6(sweep.baseline_alpha),
            best_agent.clone(),
            (sweep.best_edge + 1).to_string(),
            sig6(lifted.mean_value),
            sig6(sweep.best_alpha),
            sig6(base.std_error),
            sig6(lifted.std_error),
            sig6(base.empirical_gap),
        ]);
        let mut row = vec![label.clone()];
        row.extend(sweep.per_edge_alpha.iter().enumerate().map(|(e, a)| {
            if e == sweep.best_edge {
                format!("{}*", sig6(*a))
            } else {
                sig6(*a)
            }
        }));
        per_edge.row(row);
        csv.record([
            label,
            num(base.mean_value),
            num(base.std_error),
            num(sweep.baseline_alpha),
            best_agent,
            (sweep.best_edge + 1).to_string(),
            num(lifted.mean_value),
            num(lifted.std_error),
            num(sweep.best_alpha),
            num(optimum.value),
            optimum.kind.name().to_string(),
            num(base.empirical_gap),
            iterations.to_string(),
            seed.to_string(),
        ])?;
    }
    text.push_str(&main.render());
    text.push_str("\nalpha_p with one extra trial on each edge:\n");
    text.push_str(&per_edge.render());
    Ok(Report {
        text,
        csv: Some(csv.finish()?),
    })
}

fn agent_label(agent: usize, n: usize) -> String {
    if n <= 26 {
        ((b'A' + agent as u8) as char).to_string()
    } else {
        (agent + 1).to_string()
    }
}

fn selection_rows(
    csv: &mut CsvDoc,
    table: &mut Table,
    algorithm: &str,
    result: &SelectionResult,
    instance: &CoverageInstance,
    n: usize,
) -> CliResult<()> {
    for (pos, picks) in result.per_agent.iter().enumerate() {
        for e in picks {
            let loc = instance.agent_locations[e.agent][e.local_id];
            let [x, y] = instance.locations[loc];
            table.row([
                algorithm.to_string(),
                (pos + 1).to_string(),
                agent_label(e.agent, n),
                e.local_id.to_string(),
                loc.to_string(),
            ]);
            csv.record([
                algorithm.to_string(),
                (pos + 1).to_string(),
                agent_label(e.agent, n),
                e.local_id.to_string(),
                loc.to_string(),
                num(x),
                num(y),
            ])?;
        }
    }
    Ok(())
}

/// Runs the centralized greedy and the decentralized greedy under one
/// delivery mask on the configured instance.
pub fn cmd_solve(settings: &Settings) -> CliResult<Report> {
    let instance = settings.instance()?;
    let n = instance.num_agents();
    let order = settings.orders(n)?.remove(0);
    let mask = settings.mask()?.unwrap_or_else(|| OutcomeMask::all(n - 1, true));
    if mask.len() != n - 1 {
        return Err(CliError::config(format!(
            "mask: {} bits for a chain of {n} agents",
            mask.len()
        )));
    }
    let (ground, matroid) = apply_permutation(&instance, &order)?;
    let oracle = CoverageOracle::new(&instance);
    let seq = sequential_greedy(&oracle, &matroid, &ground)?;
    let dec = decentralized_greedy(&oracle, &matroid, &ground, &mask)?;
    let optimum = reference_optimum(&instance, settings.seed())?;
    let w = mask.clique_number();
    let bound = deterministic_gap_bound(n, w)?;

    let mut text = format!(
        "sequence {} with mask {}\n",
        order.label(),
        if mask.is_empty() { "-".into() } else { mask.to_string() }
    );
    let mut table = Table::new(["algorithm", "position", "agent", "local_id", "location"]);
    let mut csv = CsvDoc::new(
        "solve/v1",
        &["algorithm", "position", "agent", "local_id", "location", "x", "y"],
    )?;
    selection_rows(&mut csv, &mut table, "sequential", &seq, &instance, n)?;
    selection_rows(&mut csv, &mut table, "decentralized", &dec, &instance, n)?;
    text.push_str(&table.render());
    let _ = writeln!(text, "\nsequential value: {}", sig6(seq.value));
    let _ = writeln!(text, "decentralized value: {}", sig6(dec.value));
    let _ = writeln!(text, "clique number: {w}, bound 1/(2+n-w) = {}", sig6(bound));
    let _ = writeln!(
        text,
        "reference optimum: {} ({}), decentralized/optimum = {}",
        sig6(optimum.value),
        optimum.kind.name(),
        sig6(if optimum.value > 0.0 {
            dec.value / optimum.value
        } else {
            1.0
        })
    );
    Ok(Report {
        text,
        csv: Some(csv.finish()?),
    })
}

/// Serializes the configured instance.
pub fn cmd_generate(settings: &Settings) -> CliResult<Report> {
    let instance = settings.instance()?;
    Ok(Report {
        text: instance.to_json()? + "\n",
        csv: None,
    })
}
