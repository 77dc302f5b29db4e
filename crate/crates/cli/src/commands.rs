use std::path::{Path, PathBuf};
use std::time::Instant;

use qdslab_core::autgroup::{self, AutPair, PermGroup};
use qdslab_core::geometry;
use qdslab_core::incidence::{standard_correlation, ExportFormat};
use qdslab_core::qds::{self, canonical_set, qds_power, qds_sum, singer_search};
use qdslab_core::{Caps, Error, IncidenceStructure, QDSet};
use serde_json::{json, Value};

use crate::description::{self, blocks_of, describe, LoadError, Loaded, Meta};
use crate::report::Report;
use crate::{Command, MakeArgs};

#[derive(Debug)]
pub enum CmdError {
    Input(String),
    Core(Error),
}

impl CmdError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CmdError::Core(e) if e.is_cap() => 3,
            _ => 2,
        }
    }
}

impl std::fmt::Display for CmdError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CmdError::Input(m) => f.write_str(m),
            CmdError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for CmdError {
    fn from(e: Error) -> Self {
        CmdError::Core(e)
    }
}

impl From<LoadError> for CmdError {
    fn from(e: LoadError) -> Self {
        match e {
            LoadError::Core(e) if e.is_cap() => CmdError::Core(e),
            other => CmdError::Input(other.to_string()),
        }
    }
}

type Res<T> = Result<T, CmdError>;

pub fn run(cmd: Command, argv: Vec<String>, caps: &Caps) -> Res<u8> {
    let started = Instant::now();
    match cmd {
        Command::Check {
            file,
            qds,
            star,
            perfect,
        } => {
            let l = description::load(&file, caps)?;
            let all = !(qds || star || perfect);
            check(&l, all || qds, all || star, all || perfect).map(|(v, ok)| emit(argv, &[&l], v, ok, started))
        }
        Command::Build { file, out } => {
            let l = description::load(&file, caps)?;
            let s = &l.structure;
            if let Some(out) = out {
                write(&out, &s.export(ExportFormat::Json))?;
            }
            let v = json!({
                "name": l.description.meta.as_ref().and_then(|m| m.name.clone()),
                "points": s.n_points(),
                "lines": s.n_lines(),
                "line_size": s.line_size(),
                "point_degree": s.point_degree(),
                "incidences": s.incidence_count(),
                "partial_linear_space": s.is_pls(),
                "configuration": s.is_configuration(),
                "stabilizer_order": s.provenance().map(|p| p.stabilizer().len()),
                "components": s.components().len(),
            });
            Ok(emit(argv, &[&l], v, true, started))
        }
        Command::Export { file, format, out } => {
            let format: ExportFormat = format.parse().map_err(|e: Error| CmdError::Input(e.to_string()))?;
            let l = description::load(&file, caps)?;
            let text = l.structure.export(format);
            match out {
                Some(out) => write(&out, &text)?,
                None => print!("{text}"),
            }
            Ok(0)
        }
        Command::Props {
            file,
            veblen,
            desargues,
            pappus,
            dual,
            unique_completion,
        } => {
            let l = description::load(&file, caps)?;
            let all = !(veblen || desargues || pappus || dual || unique_completion);
            let flags = [
                all || veblen,
                all || desargues,
                all || pappus,
                all || dual,
                all || unique_completion,
            ];
            props(&l, flags, caps).map(|(v, ok)| emit(argv, &[&l], v, ok, started))
        }
        Command::Aut {
            file,
            order_only,
            expected,
            stabilizer,
        } => {
            let l = description::load(&file, caps)?;
            let point = stabilizer.map(|p| l.parse_point(&p)).transpose()?;
            aut(&l, order_only, expected, point, caps).map(|(v, ok)| emit(argv, &[&l], v, ok, started))
        }
        Command::Iso { first, second } => {
            let a = description::load(&first, caps)?;
            let b = description::load(&second, caps)?;
            let iso = autgroup::isomorphism(&a.structure, &b.structure, caps)?;
            let v = json!({
                "isomorphic": iso.is_some(),
                "witness": iso.as_ref().map(pair_json),
            });
            Ok(emit(argv, &[&a, &b], v, iso.is_some(), started))
        }
        Command::Make(args) => make(args, caps),
        Command::Neighborhood { file, point } => {
            let l = description::load(&file, caps)?;
            let a = l.parse_point(&point)?;
            let s = &l.structure;
            let nb = s.neighborhood(a);
            let local = |ls: &[qdslab_core::incidence::LocalLine]| -> Vec<Value> {
                ls.iter()
                    .map(|x| {
                        json!({
                            "line": s.line_label(x.line),
                            "points": labels(s, &x.points),
                            "local_size": x.local_size(),
                        })
                    })
                    .collect()
            };
            let v = json!({
                "center": s.point_label(a),
                "points": labels(s, &nb.points),
                "lines": local(&nb.lines),
                "meeting": local(&nb.meeting),
            });
            Ok(emit(argv, &[&l], v, true, started))
        }
        Command::Component { file, point } => {
            let l = description::load(&file, caps)?;
            let a = l.parse_point(&point)?;
            let s = &l.structure;
            let c = s.component(a);
            let v = json!({
                "point": s.point_label(a),
                "size": c.points.len(),
                "points": labels(s, &c.points),
                "lines": c.lines.iter().map(|&x| s.line_label(x)).collect::<Vec<_>>(),
                "components": s.components().len(),
            });
            Ok(emit(argv, &[&l], v, true, started))
        }
        Command::Part { file, summands, point } => {
            let l = description::load(&file, caps)?;
            let c = l.parse_point(&point)?;
            let s = &l.structure;
            let part = s.j_part(&summands, c, caps)?;
            let iso = AutPair {
                point_perm: part.point_map.clone(),
                line_perm: part.line_map.clone(),
            }
            .is_isomorphism(&part.structure, &part.target);
            let v = json!({
                "summands": summands,
                "point": s.point_label(c),
                "points": labels(s, &part.points),
                "lines": part.lines.iter().map(|&x| s.line_label(x)).collect::<Vec<_>>(),
                "isomorphic_to_sub_sum": iso,
            });
            Ok(emit(argv, &[&l], v, iso, started))
        }
    }
}

fn emit(argv: Vec<String>, inputs: &[&Loaded], results: Value, ok: bool, started: Instant) -> u8 {
    let bytes: Vec<&[u8]> = inputs.iter().map(|l| l.bytes.as_slice()).collect();
    print!("{}", Report::new(argv, &bytes, results, started).to_json());
    if ok {
        0
    } else {
        1
    }
}

fn write(path: &Path, text: &str) -> Res<()> {
    std::fs::write(path, text).map_err(|e| CmdError::Input(format!("{}: {e}", path.display())))
}

fn labels(s: &IncidenceStructure, points: &[usize]) -> Vec<String> {
    points.iter().map(|&p| s.point_label(p).to_string()).collect()
}

fn pair_json(p: &AutPair) -> Value {
    json!({ "points": p.point_perm, "lines": p.line_perm })
}

fn check(l: &Loaded, want_qds: bool, want_star: bool, want_perfect: bool) -> Res<(Value, bool)> {
    let g = l.group();
    let d = l.qds.elements();
    let mut out = serde_json::Map::new();
    let mut ok = true;
    if want_qds {
        let v = qds::is_qds(g, d);
        ok &= v;
        out.insert("qds".into(), json!(v));
    }
    if want_star {
        let v = qds::satisfies_star(g, d).unwrap_or(false);
        ok &= v;
        out.insert("star".into(), json!(v));
        if let Some(w) = qds::star_counterexample(g, d) {
            let w: Vec<String> = w.iter().map(|&x| g.format_element(x)).collect();
            out.insert("star_counterexample".into(), json!(w));
        }
    }
    if want_perfect {
        let v = qds::is_perfect_difference_set(g, d);
        ok &= v;
        out.insert("perfect".into(), json!(v));
    }
    Ok((Value::Object(out), ok))
}

fn props(l: &Loaded, [veblen, desargues, pappus, dual, completion]: [bool; 5], caps: &Caps) -> Res<(Value, bool)> {
    let s = &l.structure;
    let mut out = serde_json::Map::new();
    let mut ok = true;
    if veblen {
        let r = geometry::veblen_check(s, caps)?;
        ok &= r.holds;
        let cx = r.counterexample.as_ref().map(|c| {
            json!({
                "point": s.point_label(c.point),
                "lines": c.lines.iter().map(|&x| s.line_label(x)).collect::<Vec<_>>(),
                "transversals": c.transversals.iter().map(|&x| s.line_label(x)).collect::<Vec<_>>(),
            })
        });
        out.insert(
            "veblen".into(),
            json!({ "holds": r.holds, "counterexample": cx, "checked": r.checked }),
        );
    }
    if desargues {
        let r = geometry::desargues_check(s, caps)?;
        ok &= r.holds;
        let cx = r.counterexample.as_ref().map(|c| {
            json!({
                "center": s.point_label(c.center),
                "lines": c.lines.iter().map(|&x| s.line_label(x)).collect::<Vec<_>>(),
                "triangle": labels(s, &c.triangle),
                "triangle2": labels(s, &c.triangle2),
                "meets": labels(s, &c.meets),
            })
        });
        out.insert(
            "desargues".into(),
            json!({ "holds": r.holds, "counterexample": cx, "checked": r.checked }),
        );
    }
    if pappus {
        // an embedding is a search result, not a pass/fail predicate
        let r = geometry::pappus_embed(s, caps)?;
        let e = r.embedding.as_ref().map(|e| {
            json!({
                "points": labels(s, &e.point_map),
                "lines": e.line_map.iter().map(|&x| s.line_label(x)).collect::<Vec<_>>(),
            })
        });
        let w = r
            .witness
            .map(|w| w.iter().map(|&x| l.group().format_element(x)).collect::<Vec<_>>());
        out.insert(
            "pappus".into(),
            json!({ "embedding": e, "method": r.method, "witness": w }),
        );
    }
    if dual {
        let witness = match standard_correlation(s) {
            Ok(k) if k.is_correlation_of(s) => Some(json!({
                "method": "standard_correlation",
                "point_to_line": k.point_to_line,
                "line_to_point": k.line_to_point,
            })),
            _ => autgroup::self_duality(s, caps)?.map(|p| {
                json!({
                    "method": "search",
                    "point_to_line": p.point_perm,
                    "line_to_point": p.line_perm,
                })
            }),
        };
        ok &= witness.is_some();
        out.insert(
            "dual".into(),
            json!({ "self_dual": witness.is_some(), "witness": witness }),
        );
    }
    if completion {
        let r = geometry::unique_completion_check(s, caps)?;
        ok &= r.holds;
        out.insert(
            "unique_completion".into(),
            serde_json::to_value(&r).expect("report serializes"),
        );
    }
    Ok((Value::Object(out), ok))
}

fn group_json(g: &PermGroup, order_only: bool) -> Value {
    if order_only {
        json!({ "order": g.order.to_string() })
    } else {
        json!({
            "order": g.order.to_string(),
            "generators": g.generators.iter().map(pair_json).collect::<Vec<_>>(),
            "orbit_sizes": g.orbit_sizes,
            "point_orbits": g.point_orbits().len(),
        })
    }
}

fn aut(l: &Loaded, order_only: bool, expected: Option<u128>, point: Option<usize>, caps: &Caps) -> Res<(Value, bool)> {
    let s = &l.structure;
    let g = autgroup::automorphism_group(s, caps)?;
    let mut out = group_json(&g, order_only);
    let mut ok = true;
    if let Some(e) = expected {
        ok = g.order == e;
        out["expected"] = json!(e.to_string());
        out["matches_expected"] = json!(ok);
    }
    if let Some(p) = point {
        let st = autgroup::stabilizer(&g, p)?;
        let mut v = group_json(&st, order_only);
        v["point"] = json!(s.point_label(p));
        out["stabilizer"] = v;
    }
    Ok((out, ok))
}

fn make(args: MakeArgs, caps: &Caps) -> Res<u8> {
    let text = if let Some(moduli) = args.canonical {
        let d = canonical_set(&moduli)?;
        let meta = Meta {
            name: Some(format!("canonical {moduli:?}")),
            notes: None,
        };
        description::to_json(&describe(&d, Some(vec![1; moduli.len()]), Some(meta)))
    } else if let Some(files) = args.sum {
        let a = description::load(&files[0], caps)?;
        let b = description::load(&files[1], caps)?;
        let d = qds_sum(&a.qds, &b.qds, caps)?;
        let mut factors = a.factors.clone();
        factors.extend(b.factors.iter().cloned());
        description::to_json(&describe(&d, blocks_of(&factors), None))
    } else if let Some(p) = args.power {
        let a = description::load(&PathBuf::from(&p[0]), caps)?;
        let n: usize = p[1]
            .parse()
            .map_err(|_| CmdError::Input(format!("{:?} is not an exponent", p[1])))?;
        if n == 0 {
            return Err(CmdError::Input("exponent must be positive".into()));
        }
        let d = qds_power(&a.qds, n, caps)?;
        let factors: Vec<QDSet> = (0..n).flat_map(|_| a.factors.iter().cloned()).collect();
        description::to_json(&describe(&d, blocks_of(&factors), None))
    } else if let Some(q) = args.singer {
        let r = singer_search(q, caps)?;
        let docs: Vec<_> = r
            .primary()?
            .iter()
            .enumerate()
            .map(|(i, d)| {
                let meta = Meta {
                    name: Some(format!("PG(2,{q}) difference set {}", i + 1)),
                    notes: None,
                };
                describe(d, None, Some(meta))
            })
            .collect();
        description::to_json(&docs)
    } else {
        unreachable!("clap requires one source")
    };
    match args.out {
        Some(out) => write(&out, &text)?,
        None => print!("{text}"),
    }
    Ok(0)
}
