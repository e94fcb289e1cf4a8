use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde::Serialize;
use thiserror::Error;
use vipcensus::census::{census_with, perm_of_type, tangent, type_of_perm, CensusOptions};
use vipcensus::collapse::{clp, SimilarityTree};
use vipcensus::diagonal::{
    is_pnp, pnp_diagonalize, pnp_diagonalize_on, sparse_diagonalize, verify_diag_contract_with,
    DiagMap, GreedyRule,
};
use vipcensus::partition::{
    ambient_rule, classify_graph, classify_linear, in_palette, realize_type, realized_colors,
    Palette, ScanBudget, Side,
};
use vipcensus::rado::{
    bit_graph, embedding_to_pnp, extension_witness, increasing_embeddings, pnp_to_embedding,
    tree_embed, Graph,
};
use vipcensus::treecore::{full_tree, meet_closure, profile};
use vipcensus::viporder::{
    count_vip_orders, enumerate_vip_orders, LengthLex, LevelOrder, LevelOrdering, OrderedType,
    TieBreak, VipRule,
};
use vipcensus::{Node, NodeSet};

use crate::golden::{Cell, Golden};
use crate::{
    AmbientArgs, CensusArgs, ClassifyArgs, ClpArgs, Cli, Command, DiagArgs, Format, Kind,
    RadoAction, RadoArgs, RealizeArgs, SideArg, Tie, VerifyArgs,
};

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] vipcensus::Error),
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(vipcensus::Error::Parse(_)) | CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}

type Res<T> = Result<T, CliError>;

/// Rendered output and whether the command's checks passed.
pub struct Output {
    pub text: String,
    pub ok: bool,
    pub failure: Option<String>,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, ok: true, failure: None }
    }

    fn checked(text: String, ok: bool, failure: &str) -> Self {
        Output { text, ok, failure: (!ok).then(|| failure.to_string()) }
    }
}

fn json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("output values serialize");
    s.push('\n');
    s
}

fn words<'a>(nodes: impl IntoIterator<Item = &'a Node>) -> Vec<String> {
    nodes.into_iter().map(|n| if n.is_root() { "-".into() } else { n.to_string() }).collect()
}

fn opt(v: Option<u64>) -> String {
    v.map_or("-".into(), |v| v.to_string())
}

pub fn run(cli: &Cli) -> Res<Output> {
    let f = cli.format;
    match &cli.command {
        Command::Census(a) => census(a, f),
        Command::Tangent { n } => Ok(Output::ok(format!("{}\n", tangent(*n)?))),
        Command::Perm { type_id } => {
            let tau = SimilarityTree::from_type_id(type_id)?;
            let p = perm_of_type(&tau)?;
            Ok(Output::ok(match f {
                Format::Json => json(&serde_json::json!({ "type": type_id, "perm": p.values() })),
                Format::Tsv => format!("{type_id}\t{p}\n"),
            }))
        }
        Command::Type { perm } => {
            let tau = type_of_perm(perm);
            #[derive(Serialize)]
            struct Out {
                perm: Vec<usize>,
                r#type: String,
                nodes: Vec<String>,
                level_sizes: Vec<usize>,
                vip_orders: u64,
            }
            let out = Out {
                perm: perm.values().to_vec(),
                r#type: tau.type_id().to_string(),
                nodes: words(tau.nodes()),
                level_sizes: tau.level_sizes(),
                vip_orders: count_vip_orders(&tau)?,
            };
            Ok(Output::ok(match f {
                Format::Json => json(&out),
                Format::Tsv => format!("{}\t{}\n", out.r#type, out.nodes.join(",")),
            }))
        }
        Command::Clp(a) => clp_cmd(a, f),
        Command::Profile { nodes } => {
            let set: NodeSet = nodes.iter().cloned().collect();
            let p = profile(&set);
            let closure = words(&meet_closure(&set));
            Ok(Output::ok(match f {
                Format::Json => json(&serde_json::json!({ "profile": p, "closure": closure })),
                Format::Tsv => format!(
                    "antichain\t{}\ntransverse\t{}\ndiagonal\t{}\nstrongly_diagonal\t{}\nsparse\t{}\nclosure\t{}\n",
                    p.antichain,
                    p.transverse,
                    p.diagonal,
                    p.strongly_diagonal,
                    p.sparse,
                    closure.join(",")
                ),
            }))
        }
        Command::Viporders { type_id } => {
            let tau = SimilarityTree::from_type_id(type_id)?;
            let orders: Vec<String> = enumerate_vip_orders(&tau)?.iter().map(ToString::to_string).collect();
            Ok(Output::ok(match f {
                Format::Json => json(&serde_json::json!({
                    "type": type_id, "count": orders.len(), "orders": orders
                })),
                Format::Tsv => orders.iter().map(|o| format!("{o}\n")).collect(),
            }))
        }
        Command::Diag(a) => diag(a, f),
        Command::Rado(a) => rado(a, f),
        Command::Classify(a) => classify(a, f),
        Command::Realize(a) => realize(a, f),
        Command::Verify(a) => verify(a, f),
    }
}

fn census(a: &CensusArgs, f: Format) -> Res<Output> {
    if a.m >= 5 && !a.sparse && !a.long {
        return Err(CliError::Usage(format!(
            "the full census for m = {} is long-running; pass --long (or --sparse)",
            a.m
        )));
    }
    let opts = CensusOptions { sparse_only: a.sparse, per_type: a.per_type, parallel: !a.sequential };
    let rep = census_with(a.m, &opts)?;
    Ok(Output::ok(match f {
        Format::Json => json(&rep),
        Format::Tsv => {
            let mut s = format!("{}\t{}\t{}\t{}\t{}\n", rep.m, opt(rep.r), opt(rep.r_plus), rep.t, rep.t_plus);
            if let Some(per) = &rep.per_type {
                for (id, n) in &per.0 {
                    let _ = writeln!(s, "{id}\t{n}");
                }
            }
            s
        }
    }))
}

fn read_order(a: &ClpArgs) -> Res<Option<LevelOrder>> {
    let text = match &a.order_file {
        Some(p) => fs::read_to_string(p).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))?,
        None if a.order == "lenlex" => return Ok(None),
        None => a.order.clone(),
    };
    let text = text.trim();
    if text.starts_with('[') {
        return serde_json::from_str(text).map(Some).map_err(|e| CliError::Usage(e.to_string()));
    }
    Ok(Some(text.parse()?))
}

fn clp_cmd(a: &ClpArgs, f: Format) -> Res<Output> {
    let x: NodeSet = a.nodes.iter().cloned().collect();
    let amb = read_order(a)?;
    let c = clp(&x)?;
    let induced = match &amb {
        Some(o) => c.induced_order(o)?,
        None => c.induced_order(&LengthLex)?,
    };
    #[derive(Serialize)]
    struct Out {
        input: Vec<String>,
        r#type: String,
        nodes: Vec<String>,
        leaves: Vec<String>,
        closure_lengths: Vec<usize>,
        witness: BTreeMap<String, String>,
        strong_embedding: bool,
        induced_order: String,
    }
    let out = Out {
        input: words(&x),
        r#type: c.tree.type_id().to_string(),
        nodes: words(c.tree.nodes()),
        leaves: words(c.tree.leaves()),
        closure_lengths: c.lengths.clone(),
        witness: c.witness.pairs.iter().map(|(k, v)| (words([k])[0].clone(), words([v])[0].clone())).collect(),
        strong_embedding: c.witness.is_strong_embedding(),
        induced_order: induced.to_string(),
    };
    Ok(Output::ok(match f {
        Format::Json => json(&out),
        Format::Tsv => format!(
            "type\t{}\nnodes\t{}\norder\t{}\n",
            out.r#type,
            out.nodes.join(","),
            out.induced_order
        ),
    }))
}

fn diag(a: &DiagArgs, f: Format) -> Res<Output> {
    let map = match a.kind {
        Kind::Sparse => sparse_diagonalize(a.depth, &LengthLex, &mut GreedyRule::new())?,
        Kind::Pnp => pnp_diagonalize(a.depth, &LengthLex, &mut GreedyRule::new())?,
    };
    let rep = verify_diag_contract_with(&map, a.max_subset);
    let ok = rep.all_pass();
    let text = match f {
        Format::Json => {
            let mut v = serde_json::json!({
                "kind": rep.kind, "depth": a.depth, "all_pass": ok, "checks": rep.items
            });
            if a.dump {
                v["map"] = serde_json::to_value(&map).expect("maps serialize");
            }
            json(&v)
        }
        Format::Tsv => {
            let mut s: String = rep
                .items
                .iter()
                .map(|c| format!("{}\t{}\t{}\n", c.name, if c.pass { "PASS" } else { "FAIL" }, c.checked))
                .collect();
            if a.dump {
                for (k, v) in &map.phi {
                    let _ = writeln!(s, "phi\t{}\t{}", words([k])[0], words([v])[0]);
                }
            }
            s
        }
    };
    Ok(Output::checked(text, ok, "diagonalization contract failed"))
}

fn load_graph(a: &RadoArgs) -> Res<Graph> {
    match &a.graph {
        Some(p) => {
            let s = fs::read_to_string(p).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))?;
            serde_json::from_str(&s).map_err(|e| CliError::Usage(format!("{}: {e}", p.display())))
        }
        None => Ok(bit_graph(a.n)),
    }
}

fn rado(a: &RadoArgs, f: Format) -> Res<Output> {
    let g = load_graph(a)?;
    match &a.action {
        RadoAction::Embed => {
            let codes = tree_embed(&g);
            Ok(Output::ok(match f {
                Format::Json => json(&serde_json::json!({ "n": g.n(), "codes": words(&codes) })),
                Format::Tsv => codes.iter().enumerate().map(|(i, c)| format!("{i}\t{}\n", words([c])[0])).collect(),
            }))
        }
        RadoAction::Witness { a: set_a, b: set_b } => {
            let w = extension_witness(&g, set_a, set_b)?;
            Ok(Output::ok(match f {
                Format::Json => json(&serde_json::json!({ "a": set_a, "b": set_b, "witness": w })),
                Format::Tsv => format!("{}\n", w.map_or("none".into(), |c| c.to_string())),
            }))
        }
        RadoAction::Roundtrip { k } => {
            let embeddings = increasing_embeddings(&g, (*k).min(g.n()));
            let mut all_pnp = true;
            let mut roundtrip = true;
            for e in &embeddings {
                let pnp = embedding_to_pnp(e, &g)?;
                all_pnp &= is_pnp(&pnp);
                roundtrip &= pnp_to_embedding(&pnp, &g)? == *e;
            }
            let ok = all_pnp && roundtrip;
            Ok(Output::checked(
                match f {
                    Format::Json => json(&serde_json::json!({
                        "n": g.n(), "k": k, "embeddings": embeddings.len(),
                        "all_pnp": all_pnp, "roundtrip": roundtrip
                    })),
                    Format::Tsv => format!("{}\t{}\t{}\t{}\t{}\n", g.n(), k, embeddings.len(), all_pnp, roundtrip),
                },
                ok,
                "translation roundtrip failed",
            ))
        }
    }
}

fn tie(a: &AmbientArgs) -> TieBreak {
    match a.tie {
        Tie::Lex => TieBreak::Lex,
        Tie::Hash => TieBreak::Hash(a.seed),
    }
}

fn side(s: SideArg) -> Side {
    match s {
        SideArg::Linear => Side::Linear,
        SideArg::Graph => Side::Graph,
    }
}

/// The graph side diagonalizes the prefix closure of the vertex codes.
fn graph_map(g: &Graph) -> Res<DiagMap> {
    let region: NodeSet = tree_embed(g).into_iter().collect::<NodeSet>().prefix_closure();
    Ok(pnp_diagonalize_on(&region, &LengthLex, &mut GreedyRule::new())?)
}

fn classify(a: &ClassifyArgs, f: Format) -> Res<Output> {
    let palette = Palette::new(side(a.side), a.m)?;
    let budget = ScanBudget { exhaustive_limit: a.exhaustive_limit, samples: a.samples, seed: a.ambient.seed };
    let rep = match a.side {
        SideArg::Linear => {
            let map = sparse_diagonalize(a.depth, &LengthLex, &mut GreedyRule::new())?;
            let amb = ambient_rule(&map, tie(&a.ambient))?;
            let dom = full_tree(a.depth).to_vec();
            realized_colors(&dom, &palette, &budget, |x| classify_linear(x, &palette, &map, &amb))?
        }
        SideArg::Graph => {
            let g = bit_graph(a.n);
            let map = graph_map(&g)?;
            let amb = ambient_rule(&map, tie(&a.ambient))?;
            let verts: Vec<usize> = (0..a.n).collect();
            realized_colors(&verts, &palette, &budget, |b| classify_graph(b, &palette, &g, &map, &amb))?
        }
    };
    Ok(Output::ok(match f {
        Format::Json => json(&rep),
        Format::Tsv => {
            let mut s = format!(
                "m\t{}\npalette\t{}\nrealized\t{}\nscanned\t{}\noverflow\t{}\n",
                rep.m,
                rep.palette_size,
                rep.realized.len(),
                rep.scanned,
                rep.overflow
            );
            for id in &rep.missing {
                let _ = writeln!(s, "missing\t{id}");
            }
            s
        }
    }))
}

fn realize(a: &RealizeArgs, f: Format) -> Res<Output> {
    let tree = SimilarityTree::from_type_id(&a.type_id)?;
    let orders = match &a.order {
        Some(o) => vec![o.parse::<LevelOrder>()?],
        None => enumerate_vip_orders(&tree)?,
    };
    let map = sparse_diagonalize(a.depth, &LengthLex, &mut GreedyRule::new())?;
    let amb: VipRule = ambient_rule(&map, tie(&a.ambient))?;
    let amb_ref: &dyn LevelOrdering = &amb;
    let s = side(a.side);
    #[derive(Serialize)]
    struct Row {
        target: String,
        found: bool,
        domain_set: Option<Vec<String>>,
        witness: Option<Vec<String>>,
        tried: u64,
        budget: u64,
        stage: Option<String>,
    }
    let mut rows = Vec::new();
    for order in orders {
        let t = OrderedType::new(tree.clone(), order)?;
        if !in_palette(&t, s) {
            return Err(CliError::Core(vipcensus::Error::Precondition(format!(
                "{} is not in the {s:?} palette",
                t.id()
            ))));
        }
        let r = realize_type(&t, s, &map, amb_ref, a.budget)?;
        rows.push(Row {
            target: t.id(),
            found: r.witness.is_some(),
            domain_set: r.domain_set.as_ref().map(words),
            witness: r.witness.as_ref().map(words),
            tried: r.tried,
            budget: r.budget,
            stage: r.stage,
        });
    }
    Ok(Output::ok(match f {
        Format::Json => json(&serde_json::json!({ "depth": a.depth, "results": rows })),
        Format::Tsv => rows
            .iter()
            .map(|r| {
                let w = r.witness.as_ref().map_or("none within budget".into(), |w| w.join(","));
                format!("{}\t{}\t{}\n", r.target, w, r.tried)
            })
            .collect(),
    }))
}

fn load_golden(p: Option<&Path>) -> Res<Golden> {
    match p {
        None => Ok(Golden::default()),
        Some(p) => {
            let s = fs::read_to_string(p).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))?;
            serde_json::from_str(&s).map_err(|e| CliError::Usage(format!("{}: {e}", p.display())))
        }
    }
}

fn verify(a: &VerifyArgs, f: Format) -> Res<Output> {
    let golden = load_golden(a.golden.as_deref())?;
    let at = |v: &[u64], m: usize| v.get(m - 1).copied();
    let mut cells = Vec::new();
    for m in 1..=a.max_m as usize {
        let full = m <= 4 || a.long;
        let rep = census_with(m, &CensusOptions { sparse_only: !full, ..Default::default() })?;
        cells.push(Cell::new("t", m, at(&golden.t, m), rep.t));
        cells.push(Cell::new("t+", m, at(&golden.t_plus, m), rep.t_plus));
        if let (Some(r), Some(rp)) = (rep.r, rep.r_plus) {
            cells.push(Cell::new("r", m, at(&golden.r, m), r));
            cells.push(Cell::new("r+", m, at(&golden.r_plus, m), rp));
        }
    }
    let bad: Vec<&Cell> = cells.iter().filter(|c| !c.pass).collect();
    let failure = bad
        .iter()
        .map(|c| format!("{}_{}: expected {}, got {}", c.cell, c.m, opt(c.expected), c.got))
        .collect::<Vec<_>>()
        .join("; ");
    let ok = bad.is_empty();
    let text = match f {
        Format::Json => json(&serde_json::json!({ "all_pass": ok, "cells": cells })),
        Format::Tsv => cells
            .iter()
            .map(|c| {
                format!("{}\t{}\t{}\t{}\t{}\n", c.cell, c.m, opt(c.expected), c.got, if c.pass { "PASS" } else { "FAIL" })
            })
            .collect(),
    };
    Ok(Output::checked(text, ok, &format!("table mismatch: {failure}")))
}
