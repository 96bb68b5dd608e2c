//! The subcommands. Each returns an [`Output`]; per-row numeric failures
//! become ERROR rows instead of aborting the command.

use crate::config::{Format, RunConfig};
use crate::error::CliError;
use crate::output::{Cell, Output, Status, Table};
use serde_json::{json, Value};
use zeeman::kernels::{
    dominant_kernel, variant_time_factor, zonal_kernel_closed, zonal_kernel_numeric, ZonalPart,
};
use zeeman::pathint::{
    cylinder_value, discrete_feynman_kac, ActionRule, CylinderFunctional, TimeSlicing,
    WeightConvention,
};
use zeeman::spectrum::spectrum_table;
use zeeman::thermo::{
    hurwitz_residuals, partition_by_trace, partition_variant, riemann_zeta, zeta_zonal, TraceSource,
};
use zeeman::verify::{self, Outcome, VerifyConfig};
use zeeman::{Flow, HamiltonianKind, MagneticParams, Result as LibResult, C64};

fn c64_json(v: C64) -> Value {
    json!({ "re": v.re, "im": v.im })
}

fn error_cells(n: usize, e: &zeeman::Error) -> Vec<Cell> {
    let mut cells = vec![Cell::Empty; n];
    cells.push(Cell::Text("ERROR".into()));
    cells.push(Cell::Text(e.to_string()));
    cells
}

fn ok_tail(mut cells: Vec<Cell>) -> Vec<Cell> {
    cells.push(Cell::Text("OK".into()));
    cells.push(Cell::Empty);
    cells
}

pub fn spectrum(cfg: &RunConfig) -> Result<Output, CliError> {
    let variant = cfg.variant();
    let zones = &cfg.spectrum.zones;
    let max_zone = zones.iter().copied().max().unwrap_or(0);
    let rows: Vec<_> = spectrum_table(&cfg.params, &variant, cfg.spectrum.max_p, max_zone)?
        .into_iter()
        .filter(|r| zones.contains(&r.zone))
        .collect();
    let mut table = Table::new(&[
        "zone",
        "p",
        "p_blocks",
        "upsilon",
        "l",
        "m",
        "eigenvalue",
        "multiplicity",
    ]);
    for r in &rows {
        let blocks: Vec<String> = r.p_blocks.iter().map(|v| v.to_string()).collect();
        table.push(vec![
            Cell::Int(r.zone as i128),
            Cell::Int(r.p as i128),
            Cell::Text(blocks.join(";")),
            Cell::Int(r.upsilon as i128),
            Cell::Int(r.l as i128),
            Cell::Int(r.m as i128),
            Cell::Num(r.eigenvalue),
            Cell::Int(r.multiplicity as i128),
        ]);
    }
    let json = json!({ "params": cfg.params, "variant": variant, "max_p": cfg.spectrum.max_p, "rows": rows });
    Ok(Output {
        json,
        table: Some(table),
        status: Status::Ok,
        default_format: Format::Csv,
    })
}

struct KernelRow {
    value: C64,
    dominant: C64,
    long_term: C64,
}

fn kernel_at(
    cfg: &RunConfig,
    flow: Flow,
    a: usize,
    t: f64,
    x: &[f64],
    y: &[f64],
) -> LibResult<KernelRow> {
    let (tt, factor) = variant_time_factor(flow, t, &cfg.variant());
    if a <= 1 {
        let v = zonal_kernel_closed(flow, a, tt, x, y, &cfg.params)?;
        let zero = C64::new(0.0, 0.0);
        return Ok(KernelRow {
            value: v.value * factor,
            dominant: v.dominant.unwrap_or(v.value) * factor,
            long_term: v.long_term.unwrap_or(zero) * factor,
        });
    }
    let q = cfg.quad_degree;
    let ladder = [q.saturating_sub(10).max(2), q];
    let value = zonal_kernel_numeric(flow, a, tt, x, y, &cfg.params, &ladder, 1e-8)? * factor;
    let dominant = dominant_kernel(flow, a, tt, x, y, &cfg.params)? * factor;
    Ok(KernelRow {
        value,
        dominant,
        long_term: value - dominant,
    })
}

pub fn kernel(cfg: &RunConfig) -> Result<Output, CliError> {
    let k = cfg.params.dim();
    let kc = &cfg.kernel;
    let pairs = kc.grid.pairs(k);
    for (x, y) in &pairs {
        if x.len() != k || y.len() != k {
            return Err(CliError::Usage(format!(
                "grid points must have {k} coordinates"
            )));
        }
    }
    let mut header = vec!["t".to_string()];
    header.extend((1..=k).map(|i| format!("x{i}")));
    header.extend((1..=k).map(|i| format!("y{i}")));
    for h in [
        "re",
        "im",
        "dominant_re",
        "dominant_im",
        "longterm_re",
        "longterm_im",
        "status",
        "message",
    ] {
        header.push(h.to_string());
    }
    let mut table = Table {
        header,
        rows: Vec::new(),
    };
    let mut rows_json = Vec::new();
    let mut status = Status::Ok;
    for &t in &kc.times {
        for (x, y) in &pairs {
            let mut cells = vec![Cell::Num(t)];
            cells.extend(x.iter().map(|&v| Cell::Num(v)));
            cells.extend(y.iter().map(|&v| Cell::Num(v)));
            match kernel_at(cfg, kc.flow, kc.zone, t, x, y) {
                Ok(r) => {
                    cells.extend(
                        [
                            r.value.re,
                            r.value.im,
                            r.dominant.re,
                            r.dominant.im,
                            r.long_term.re,
                            r.long_term.im,
                        ]
                        .map(Cell::Num),
                    );
                    table.push(ok_tail(cells));
                    rows_json.push(json!({
                        "t": t, "x": x, "y": y, "status": "OK",
                        "value": c64_json(r.value), "dominant": c64_json(r.dominant), "long_term": c64_json(r.long_term),
                    }));
                }
                Err(e) => {
                    status = status.max(Status::Error);
                    let mut row = cells;
                    row.extend(error_cells(6, &e));
                    table.push(row);
                    rows_json.push(json!({ "t": t, "x": x, "y": y, "status": "ERROR", "message": e.to_string() }));
                }
            }
        }
    }
    let json =
        json!({ "flow": kc.flow, "zone": kc.zone, "variant": cfg.variant(), "rows": rows_json });
    Ok(Output {
        json,
        table: Some(table),
        status,
        default_format: Format::Csv,
    })
}

pub fn partition(cfg: &RunConfig) -> Result<Output, CliError> {
    let pc = &cfg.partition;
    let variant = cfg.variant();
    let source = if pc.zone <= 1 {
        TraceSource::Closed(ZonalPart::Full)
    } else {
        TraceSource::Numeric
    };
    let mut table = Table::new(&[
        "t",
        "closed_re",
        "closed_im",
        "trace_re",
        "trace_im",
        "trace_residual",
        "status",
        "message",
    ]);
    let mut rows_json = Vec::new();
    let mut status = Status::Ok;
    for t in pc.sweep() {
        let row = (|| -> LibResult<(C64, C64)> {
            let closed = partition_variant::<f64>(pc.flow, pc.zone, t, &cfg.params, &variant)?;
            let (tt, factor) = variant_time_factor(pc.flow, t, &variant);
            let trace = partition_by_trace::<f64>(
                pc.flow,
                pc.zone,
                tt,
                &cfg.params,
                source,
                &pc.trace_ladder,
                1e-8,
            )? * factor;
            Ok((closed, trace))
        })();
        match row {
            Ok((closed, trace)) => {
                let res = (closed - trace).norm();
                table.push(ok_tail(vec![
                    Cell::Num(t),
                    Cell::Num(closed.re),
                    Cell::Num(closed.im),
                    Cell::Num(trace.re),
                    Cell::Num(trace.im),
                    Cell::Num(res),
                ]));
                rows_json.push(json!({ "t": t, "status": "OK", "closed": c64_json(closed), "trace": c64_json(trace), "trace_residual": res }));
            }
            Err(e) => {
                status = status.max(Status::Error);
                let mut cells = vec![Cell::Num(t)];
                cells.extend(error_cells(5, &e));
                table.push(cells);
                rows_json.push(json!({ "t": t, "status": "ERROR", "message": e.to_string() }));
            }
        }
    }
    let json = json!({ "flow": pc.flow, "zone": pc.zone, "variant": variant, "rows": rows_json });
    Ok(Output {
        json,
        table: Some(table),
        status,
        default_format: Format::Csv,
    })
}

pub fn zeta(cfg: &RunConfig) -> Result<Output, CliError> {
    let zc = &cfg.zeta;
    let variant = cfg.variant();
    let riemann_case = cfg.params == MagneticParams::single(1.0, 2)?
        && variant.kind == HamiltonianKind::ClassicalZeeman;
    let mut table = Table::new(&[
        "s",
        "value_re",
        "value_im",
        "riemann_relation_residual",
        "status",
        "message",
    ]);
    let mut rows_json = Vec::new();
    let mut status = Status::Ok;
    for &s in &zc.s {
        let sc = C64::new(s, 0.0);
        let row = (|| -> LibResult<(C64, Option<f64>)> {
            let v = zeta_zonal(zc.zone, sc, &cfg.params, &variant, zc.truncation, zc.tail)?;
            let res = if riemann_case {
                Some((v - riemann_zeta(sc)? * (1.0 - 2f64.powf(-s))).norm())
            } else {
                None
            };
            Ok((v, res))
        })();
        match row {
            Ok((v, res)) => {
                table.push(ok_tail(vec![
                    Cell::Num(s),
                    Cell::Num(v.re),
                    Cell::Num(v.im),
                    res.map_or(Cell::Empty, Cell::Num),
                ]));
                rows_json.push(json!({ "s": s, "status": "OK", "value": c64_json(v), "riemann_relation_residual": res }));
            }
            Err(e) => {
                status = status.max(Status::Error);
                let mut cells = vec![Cell::Num(s)];
                cells.extend(error_cells(3, &e));
                table.push(cells);
                rows_json.push(json!({ "s": s, "status": "ERROR", "message": e.to_string() }));
            }
        }
    }
    let mut json = json!({ "zone": zc.zone, "variant": variant, "truncation": zc.truncation, "tail": zc.tail, "rows": rows_json });
    if riemann_case {
        let hurwitz: Vec<Value> =
            zc.s.iter()
                .filter(|&&s| s > 1.0)
                .map(|&s| match hurwitz_residuals(zc.zone, s, zc.truncation) {
                    Ok(r) => json!({ "s": s, "candidates": r }),
                    Err(e) => json!({ "s": s, "error": e.to_string() }),
                })
                .collect();
        json["hurwitz_relation"] = Value::Array(hurwitz);
    }
    Ok(Output {
        json,
        table: Some(table),
        status,
        default_format: Format::Json,
    })
}

pub fn pathint(cfg: &RunConfig, degree: usize) -> Result<Output, CliError> {
    let pc = &cfg.pathint;
    let k = cfg.params.dim();
    let start = if pc.start.is_empty() {
        vec![0.0; k]
    } else {
        pc.start.clone()
    };
    let end = if pc.end.is_empty() {
        vec![0.0; k]
    } else {
        pc.end.clone()
    };
    if start.len() != k || end.len() != k {
        return Err(CliError::Usage(format!(
            "path end points must have {k} coordinates"
        )));
    }
    let target = if pc.pinned {
        Some(
            zonal_kernel_closed(pc.flow, pc.zone, pc.horizon, &start, &end, &cfg.params)
                .map(|v| v.value),
        )
    } else {
        None
    };
    let mut table = Table::new(&[
        "slices",
        "value_re",
        "value_im",
        "target_re",
        "target_im",
        "residual",
        "status",
        "message",
    ]);
    let mut rows_json = Vec::new();
    let mut status = Status::Ok;
    for &n in &pc.slices {
        let row = (|| -> LibResult<(C64, Option<C64>)> {
            let sl =
                TimeSlicing::new(pc.horizon, n, start.clone(), pc.pinned.then(|| end.clone()))?;
            let v = cylinder_value(
                pc.flow,
                pc.zone,
                &CylinderFunctional::one(sl),
                &cfg.params,
                degree,
            )?;
            let t = match &target {
                Some(Ok(t)) => Some(*t),
                Some(Err(e)) => return Err(e.clone()),
                None => None,
            };
            Ok((v, t))
        })();
        match row {
            Ok((v, t)) => {
                let res = t.map(|t| (v - t).norm());
                table.push(ok_tail(vec![
                    Cell::Int(n as i128),
                    Cell::Num(v.re),
                    Cell::Num(v.im),
                    t.map_or(Cell::Empty, |t| Cell::Num(t.re)),
                    t.map_or(Cell::Empty, |t| Cell::Num(t.im)),
                    res.map_or(Cell::Empty, Cell::Num),
                ]));
                rows_json.push(json!({ "slices": n, "status": "OK", "value": c64_json(v), "target": t.map(c64_json), "residual": res }));
            }
            Err(e) => {
                status = status.max(Status::Error);
                let mut cells = vec![Cell::Int(n as i128)];
                cells.extend(error_cells(5, &e));
                table.push(cells);
                rows_json.push(json!({ "slices": n, "status": "ERROR", "message": e.to_string() }));
            }
        }
    }
    let mut json = json!({
        "flow": pc.flow, "zone": pc.zone, "horizon": pc.horizon, "start": start, "end": pc.pinned.then(|| end.clone()),
        "degree": degree, "rows": rows_json,
    });
    if pc.pinned && pc.zone == 0 {
        let mut fk = serde_json::Map::new();
        for (name, conv) in [
            ("corrected", WeightConvention::Corrected),
            ("uncorrected", WeightConvention::Uncorrected),
        ] {
            let v = match discrete_feynman_kac(
                pc.flow,
                pc.horizon,
                &start,
                &end,
                &pc.slices,
                &cfg.params,
                conv,
                ActionRule::LeftRiemann,
                degree,
            ) {
                Ok(rows) => serde_json::to_value(rows).unwrap_or_default(),
                Err(e) => {
                    status = status.max(Status::Error);
                    json!({ "error": e.to_string() })
                }
            };
            fk.insert(name.to_string(), v);
        }
        json["feynman_kac"] = Value::Object(fk);
    }
    Ok(Output {
        json,
        table: Some(table),
        status,
        default_format: Format::Json,
    })
}

pub fn verify(config: &VerifyConfig, suite: &str) -> Result<Output, CliError> {
    let report = verify::run_suite(suite, config)?;
    let mut table = Table::new(&[
        "id",
        "params",
        "residual",
        "tolerance",
        "outcome",
        "message",
    ]);
    for c in &report.checks {
        table.push(vec![
            Cell::Text(c.id.clone()),
            Cell::Text(c.params.to_string()),
            c.residual.map_or(Cell::Empty, Cell::Num),
            Cell::Num(c.tolerance),
            Cell::Text(
                serde_json::to_value(c.outcome)
                    .ok()
                    .and_then(|v| v.as_str().map(String::from))
                    .unwrap_or_default(),
            ),
            Cell::Text(c.message.clone().unwrap_or_default()),
        ]);
    }
    let status = if report.checks.iter().any(|c| c.outcome == Outcome::Fail) {
        Status::Fail
    } else if report.checks.iter().any(|c| c.outcome == Outcome::Error) {
        Status::Error
    } else {
        Status::Ok
    };
    let json = serde_json::to_value(&report).map_err(|e| CliError::Io(e.to_string()))?;
    Ok(Output {
        json,
        table: Some(table),
        status,
        default_format: Format::Json,
    })
}
