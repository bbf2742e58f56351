//! Flat `key = value` run configuration.
//!
//! ```text
//! # comment
//! model = bo
//! grid.n = 1024
//! grid.length = 100
//! time.dt = 1e-3
//! time.t_final = 1
//! ic.kind = gaussian
//! ic.params = 1, 0, 2
//! ```
//!
//! Every key is checked when the text is parsed; errors carry the offending
//! line and key.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::fmt::Write as _;
use std::path::PathBuf;

use crate::complex_ext::Partner;
use crate::error::{Error, Result};
use crate::ic;
use crate::io::expr::Expr;
use crate::models::{Coefficient, EquationSpec, GeneralLinear};
use crate::spectral::{Field, TorusGrid, MAX_DERIVATIVE_ORDER};
use crate::timestep::IntegratorConfig;

const KEYS: &[&str] = &[
    "model",
    "k",
    "delta",
    "j",
    "a0",
    "a1",
    "a2",
    "a3",
    "a4",
    "b",
    "grid.n",
    "grid.length",
    "time.dt",
    "time.t_final",
    "time.stride",
    "ic.kind",
    "ic.params",
    "out.dir",
    "limits.deltas",
    "probe.interval",
    "probe.partner",
    "probe.delta",
    "probe.x0",
    "probe.radii",
    "probe.time",
];

#[derive(Clone, Debug, PartialEq)]
pub enum ModelConfig {
    Bo,
    Gbo {
        k: u32,
    },
    Bh,
    Ilw {
        delta: f64,
    },
    Kdv,
    General {
        j: u32,
        a: [Option<Expr>; 5],
        b: Expr,
    },
}

impl ModelConfig {
    fn tag(&self) -> &'static str {
        match self {
            ModelConfig::Bo => "bo",
            ModelConfig::Gbo { .. } => "gbo",
            ModelConfig::Bh => "bh",
            ModelConfig::Ilw { .. } => "ilw",
            ModelConfig::Kdv => "kdv",
            ModelConfig::General { .. } => "general",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IcKind {
    Gaussian,
    Bump,
    Soliton,
    Modes,
    Zero,
    Sech2,
}

impl IcKind {
    const ALL: [(&'static str, IcKind); 6] = [
        ("gaussian", IcKind::Gaussian),
        ("bump", IcKind::Bump),
        ("soliton", IcKind::Soliton),
        ("modes", IcKind::Modes),
        ("zero", IcKind::Zero),
        ("sech2", IcKind::Sech2),
    ];

    pub fn name(self) -> &'static str {
        Self::ALL
            .iter()
            .find(|(_, k)| *k == self)
            .map(|(n, _)| *n)
            .unwrap()
    }

    fn usage(self) -> &'static str {
        match self {
            IcKind::Gaussian | IcKind::Sech2 => "amp, center, width",
            IcKind::Bump => "amp, center, radius",
            IcKind::Soliton => "speed, center",
            IcKind::Modes => "k, a, b triples",
            IcKind::Zero => "no parameters",
        }
    }

    fn accepts(self, count: usize) -> bool {
        match self {
            IcKind::Gaussian | IcKind::Sech2 | IcKind::Bump => count == 3,
            IcKind::Soliton => count == 2,
            IcKind::Modes => count >= 3 && count.is_multiple_of(3),
            IcKind::Zero => count == 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct IcConfig {
    pub kind: IcKind,
    pub params: Vec<f64>,
}

impl IcConfig {
    /// Samples the initial datum; `soliton` is the exact periodic BO traveling wave.
    pub fn build(&self, grid: &TorusGrid) -> Result<Field> {
        let p = &self.params;
        Ok(match self.kind {
            IcKind::Gaussian => ic::gaussian(grid, p[0], p[1], p[2]),
            IcKind::Bump => ic::bump(grid, p[0], p[1], p[2]),
            IcKind::Sech2 => ic::sech2(grid, p[0], p[1], p[2]),
            IcKind::Soliton => ic::periodic_soliton(grid, p[0], p[1])?,
            IcKind::Modes => {
                let triples: Vec<(i64, f64, f64)> = p
                    .chunks_exact(3)
                    .map(|c| (c[0] as i64, c[1], c[2]))
                    .collect();
                ic::modes(grid, &triples)
            }
            IcKind::Zero => Field::zeros(*grid),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PartnerChoice {
    Hilbert,
    IlwDx,
    Both,
}

impl PartnerChoice {
    fn name(self) -> &'static str {
        match self {
            PartnerChoice::Hilbert => "hilbert",
            PartnerChoice::IlwDx => "ilw_dx",
            PartnerChoice::Both => "both",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ProbeConfig {
    pub interval: Option<[f64; 2]>,
    pub partner: PartnerChoice,
    pub delta: Option<f64>,
    pub x0: Option<f64>,
    pub radii: Vec<f64>,
    /// Evolve the initial datum this long before probing.
    pub time: f64,
}

impl ProbeConfig {
    pub fn partners(&self) -> Vec<Partner> {
        let ilw = self.delta.map(|delta| Partner::IlwDx { delta });
        match self.partner {
            PartnerChoice::Hilbert => vec![Partner::Hilbert],
            PartnerChoice::IlwDx => ilw.into_iter().collect(),
            PartnerChoice::Both => std::iter::once(Partner::Hilbert).chain(ilw).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub model: ModelConfig,
    pub grid_n: usize,
    pub grid_length: f64,
    pub dt: f64,
    pub t_final: f64,
    pub stride: usize,
    pub ic: IcConfig,
    pub out_dir: PathBuf,
    pub limit_deltas: Vec<f64>,
    pub probe: ProbeConfig,
}

impl RunConfig {
    pub fn grid(&self) -> TorusGrid {
        TorusGrid::new(self.grid_n, self.grid_length).expect("validated at parse time")
    }

    pub fn integrator(&self) -> IntegratorConfig {
        IntegratorConfig::new(self.dt, self.t_final).with_stride(self.stride)
    }

    pub fn initial_field(&self) -> Result<Field> {
        self.ic.build(&self.grid())
    }

    pub fn equation(&self) -> EquationSpec {
        match &self.model {
            ModelConfig::Bo => EquationSpec::Bo,
            ModelConfig::Gbo { k } => EquationSpec::Gbo { k: *k },
            ModelConfig::Bh => EquationSpec::Bh,
            ModelConfig::Ilw { delta } => EquationSpec::Ilw { delta: *delta },
            ModelConfig::Kdv => EquationSpec::Kdv,
            ModelConfig::General { j, a, b } => {
                let coefficient = |e: &Expr| match e.as_constant() {
                    Some(c) => Coefficient::constant(c),
                    None => {
                        let e2 = e.clone();
                        Coefficient::new(e.to_string(), move |x, t| e2.eval(x, t))
                    }
                };
                let last = a.iter().rposition(Option::is_some).map_or(0, |i| i + 1);
                let a = a[..last]
                    .iter()
                    .map(|e| {
                        e.as_ref()
                            .map_or_else(|| Coefficient::constant(0.0), coefficient)
                    })
                    .collect();
                EquationSpec::GeneralLinear(GeneralLinear {
                    j: *j,
                    a,
                    b: coefficient(b),
                })
            }
        }
    }

    /// Canonical text; parsing it gives back an equal config.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let list = |v: &[f64]| {
            v.iter()
                .map(|x| format!("{x:?}"))
                .collect::<Vec<_>>()
                .join(", ")
        };
        let _ = writeln!(s, "model = {}", self.model.tag());
        match &self.model {
            ModelConfig::Gbo { k } => {
                let _ = writeln!(s, "k = {k}");
            }
            ModelConfig::Ilw { delta } => {
                let _ = writeln!(s, "delta = {delta:?}");
            }
            ModelConfig::General { j, a, b } => {
                let _ = writeln!(s, "j = {j}");
                for (m, e) in a.iter().enumerate() {
                    if let Some(e) = e {
                        let _ = writeln!(s, "a{m} = {e}");
                    }
                }
                let _ = writeln!(s, "b = {b}");
            }
            _ => {}
        }
        let _ = writeln!(s, "grid.n = {}", self.grid_n);
        let _ = writeln!(s, "grid.length = {:?}", self.grid_length);
        let _ = writeln!(s, "time.dt = {:?}", self.dt);
        let _ = writeln!(s, "time.t_final = {:?}", self.t_final);
        let _ = writeln!(s, "time.stride = {}", self.stride);
        let _ = writeln!(s, "ic.kind = {}", self.ic.kind.name());
        if !self.ic.params.is_empty() {
            let _ = writeln!(s, "ic.params = {}", list(&self.ic.params));
        }
        let _ = writeln!(s, "out.dir = {}", self.out_dir.display());
        if !self.limit_deltas.is_empty() {
            let _ = writeln!(s, "limits.deltas = {}", list(&self.limit_deltas));
        }
        let p = &self.probe;
        if let Some(iv) = p.interval {
            let _ = writeln!(s, "probe.interval = {}", list(&iv));
        }
        let _ = writeln!(s, "probe.partner = {}", p.partner.name());
        if let Some(d) = p.delta {
            let _ = writeln!(s, "probe.delta = {d:?}");
        }
        if let Some(x0) = p.x0 {
            let _ = writeln!(s, "probe.x0 = {x0:?}");
        }
        if !p.radii.is_empty() {
            let _ = writeln!(s, "probe.radii = {}", list(&p.radii));
        }
        let _ = writeln!(s, "probe.time = {:?}", p.time);
        s
    }
}

struct Entry {
    line: usize,
    value: String,
}

struct Entries {
    map: HashMap<&'static str, Entry>,
}

fn err(line: usize, key: &str, message: impl Into<String>) -> Error {
    Error::Config {
        line,
        key: key.to_string(),
        message: message.into(),
    }
}

impl Entries {
    fn get(&self, key: &str) -> Option<&Entry> {
        self.map.get(key)
    }

    fn line(&self, key: &str) -> usize {
        self.get(key).map_or(0, |e| e.line)
    }

    fn required(&self, key: &str) -> Result<&Entry> {
        self.get(key)
            .ok_or_else(|| err(0, key, "missing required key"))
    }

    fn parse<T: std::str::FromStr>(&self, key: &str, what: &str) -> Result<Option<T>> {
        self.get(key)
            .map(|e| {
                e.value
                    .parse::<T>()
                    .map_err(|_| err(e.line, key, format!("expected {what}, got `{}`", e.value)))
            })
            .transpose()
    }

    fn real(&self, key: &str) -> Result<Option<f64>> {
        let v: Option<f64> = self.parse(key, "a real number")?;
        match v {
            Some(x) if !x.is_finite() => Err(err(self.line(key), key, "must be finite")),
            _ => Ok(v),
        }
    }

    fn positive(&self, key: &str) -> Result<Option<f64>> {
        match self.real(key)? {
            Some(x) if x <= 0.0 => Err(err(
                self.line(key),
                key,
                format!("must be positive, got {x}"),
            )),
            v => Ok(v),
        }
    }

    fn reals(&self, key: &str) -> Result<Option<Vec<f64>>> {
        let Some(e) = self.get(key) else {
            return Ok(None);
        };
        if e.value.is_empty() {
            return Ok(Some(Vec::new()));
        }
        e.value
            .split(',')
            .map(|s| {
                let s = s.trim();
                s.parse::<f64>()
                    .ok()
                    .filter(|v| v.is_finite())
                    .ok_or_else(|| {
                        err(
                            e.line,
                            key,
                            format!("expected a list of reals, bad entry `{s}`"),
                        )
                    })
            })
            .collect::<Result<Vec<_>>>()
            .map(Some)
    }

    fn expr(&self, key: &str) -> Result<Option<Expr>> {
        self.get(key)
            .map(|e| {
                e.value
                    .parse::<Expr>()
                    .map_err(|x| err(e.line, key, x.to_string()))
            })
            .transpose()
    }

    fn forbid(&self, keys: &[&str], model: &str) -> Result<()> {
        for k in keys {
            if let Some(e) = self.get(k) {
                return Err(err(e.line, k, format!("not used by model={model}")));
            }
        }
        Ok(())
    }
}

fn tokenize(text: &str) -> Result<Entries> {
    let mut map = HashMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, value) = content
            .split_once('=')
            .ok_or_else(|| err(line, content, "expected `key = value`"))?;
        let key = key.trim();
        let value = value.trim().to_string();
        let known = KEYS
            .iter()
            .find(|k| **k == key)
            .ok_or_else(|| err(line, key, "unknown key"))?;
        if let Some(prev) = map.insert(*known, Entry { line, value }) {
            return Err(err(
                line,
                key,
                format!("duplicate key (first set on line {})", prev.line),
            ));
        }
    }
    Ok(Entries { map })
}

fn model_config(e: &Entries) -> Result<ModelConfig> {
    let entry = e.required("model")?;
    let general_keys = ["j", "a0", "a1", "a2", "a3", "a4", "b"];
    let tag = entry.value.as_str();
    let model = match tag {
        "bo" => ModelConfig::Bo,
        "bh" => ModelConfig::Bh,
        "kdv" => ModelConfig::Kdv,
        "gbo" => {
            let k: u32 = e
                .parse("k", "a non-negative integer")?
                .ok_or_else(|| err(entry.line, "k", "gbo requires k"))?;
            if k < 2 {
                return Err(err(
                    e.line("k"),
                    "k",
                    format!("must be at least 2, got {k}"),
                ));
            }
            ModelConfig::Gbo { k }
        }
        "ilw" => {
            let delta = e
                .positive("delta")?
                .ok_or_else(|| err(entry.line, "delta", "ilw requires delta"))?;
            ModelConfig::Ilw { delta }
        }
        "general" => {
            let j: u32 = e
                .parse("j", "a non-negative integer")?
                .ok_or_else(|| err(entry.line, "j", "general requires j"))?;
            if j > MAX_DERIVATIVE_ORDER {
                return Err(err(
                    e.line("j"),
                    "j",
                    format!("must be at most {MAX_DERIVATIVE_ORDER}"),
                ));
            }
            let b = e
                .expr("b")?
                .ok_or_else(|| err(entry.line, "b", "general requires b"))?;
            let mut a: [Option<Expr>; 5] = Default::default();
            for (m, slot) in a.iter_mut().enumerate() {
                *slot = e.expr(&format!("a{m}"))?;
            }
            ModelConfig::General { j, a, b }
        }
        other => {
            return Err(err(
                entry.line,
                "model",
                format!("unknown model `{other}` (expected bo, gbo, bh, ilw, kdv or general)"),
            ))
        }
    };
    if tag != "gbo" {
        e.forbid(&["k"], tag)?;
    }
    if tag != "ilw" {
        e.forbid(&["delta"], tag)?;
    }
    if tag != "general" {
        e.forbid(&general_keys, tag)?;
    }
    Ok(model)
}

fn ic_config(e: &Entries, grid: &TorusGrid) -> Result<IcConfig> {
    let entry = e.required("ic.kind")?;
    let kind = IcKind::ALL
        .iter()
        .find(|(n, _)| *n == entry.value)
        .map(|(_, k)| *k)
        .ok_or_else(|| {
            let names: Vec<&str> = IcKind::ALL.iter().map(|(n, _)| *n).collect();
            err(
                entry.line,
                "ic.kind",
                format!(
                    "unknown kind `{}` (expected one of {})",
                    entry.value,
                    names.join(", ")
                ),
            )
        })?;
    let params = e.reals("ic.params")?.unwrap_or_default();
    let line = if e.get("ic.params").is_some() {
        e.line("ic.params")
    } else {
        entry.line
    };
    if !kind.accepts(params.len()) {
        return Err(err(
            line,
            "ic.params",
            format!(
                "{} takes {}, got {} values",
                kind.name(),
                kind.usage(),
                params.len()
            ),
        ));
    }
    match kind {
        IcKind::Gaussian | IcKind::Sech2 | IcKind::Bump if params[2] <= 0.0 => {
            return Err(err(line, "ic.params", "width/radius must be positive"));
        }
        IcKind::Soliton if params[0] <= 2.0 * PI / grid.length() => {
            return Err(err(
                line,
                "ic.params",
                format!(
                    "soliton speed must exceed 2π/L = {}",
                    2.0 * PI / grid.length()
                ),
            ));
        }
        IcKind::Modes => {
            for c in params.chunks_exact(3) {
                if c[0].fract() != 0.0 || c[0].abs() >= (grid.n() / 2) as f64 {
                    return Err(err(
                        line,
                        "ic.params",
                        format!("mode {} is not an integer below n/2", c[0]),
                    ));
                }
            }
        }
        _ => {}
    }
    Ok(IcConfig { kind, params })
}

fn probe_config(e: &Entries, model: &ModelConfig, grid: &TorusGrid) -> Result<ProbeConfig> {
    let half = grid.length() / 2.0;
    let interval = match e.reals("probe.interval")? {
        None => None,
        Some(v) => {
            let line = e.line("probe.interval");
            match v[..] {
                [a, b] if a < b && a >= -half && b <= half => Some([a, b]),
                [_, _] => {
                    return Err(err(
                        line,
                        "probe.interval",
                        format!("need -L/2 <= a < b <= L/2 = {half}"),
                    ))
                }
                _ => return Err(err(line, "probe.interval", "expected two values `a, b`")),
            }
        }
    };
    let partner = match e.get("probe.partner") {
        None => PartnerChoice::Both,
        Some(p) => match p.value.as_str() {
            "hilbert" => PartnerChoice::Hilbert,
            "ilw_dx" => PartnerChoice::IlwDx,
            "both" => PartnerChoice::Both,
            other => {
                return Err(err(
                    p.line,
                    "probe.partner",
                    format!("unknown partner `{other}` (expected hilbert, ilw_dx or both)"),
                ))
            }
        },
    };
    let delta = match (e.positive("probe.delta")?, model) {
        (Some(d), _) => Some(d),
        (None, ModelConfig::Ilw { delta }) => Some(*delta),
        (None, _) => None,
    };
    if partner != PartnerChoice::Hilbert && delta.is_none() && interval.is_some() {
        let line = e.line("probe.partner");
        return Err(err(
            line,
            "probe.delta",
            "the ilw_dx partner needs probe.delta",
        ));
    }
    let x0 = e.real("probe.x0")?;
    let radii = e.reals("probe.radii")?.unwrap_or_default();
    if let Some(r) = radii.iter().find(|r| **r <= 0.0) {
        return Err(err(
            e.line("probe.radii"),
            "probe.radii",
            format!("radii must be positive, got {r}"),
        ));
    }
    match (x0.is_some(), radii.is_empty()) {
        (true, true) => {
            return Err(err(
                e.line("probe.x0"),
                "probe.radii",
                "probe.x0 needs probe.radii",
            ))
        }
        (false, false) => {
            return Err(err(
                e.line("probe.radii"),
                "probe.x0",
                "probe.radii needs probe.x0",
            ))
        }
        _ => {}
    }
    let time = match e.real("probe.time")? {
        Some(t) if t < 0.0 => {
            return Err(err(
                e.line("probe.time"),
                "probe.time",
                "must be non-negative",
            ))
        }
        t => t.unwrap_or(0.0),
    };
    Ok(ProbeConfig {
        interval,
        partner,
        delta,
        x0,
        radii,
        time,
    })
}

pub fn parse_config(text: &str) -> Result<RunConfig> {
    let e = tokenize(text)?;
    let model = model_config(&e)?;

    let n_line = e.line("grid.n");
    let grid_n: usize = e
        .parse("grid.n", "a positive integer")?
        .ok_or_else(|| err(0, "grid.n", "missing required key"))?;
    let grid_length = e
        .positive("grid.length")?
        .ok_or_else(|| err(0, "grid.length", "missing required key"))?;
    let grid =
        TorusGrid::new(grid_n, grid_length).map_err(|x| err(n_line, "grid.n", x.to_string()))?;

    let dt = e
        .positive("time.dt")?
        .ok_or_else(|| err(0, "time.dt", "missing required key"))?;
    let t_final = e
        .real("time.t_final")?
        .ok_or_else(|| err(0, "time.t_final", "missing required key"))?;
    if t_final < 0.0 {
        return Err(err(
            e.line("time.t_final"),
            "time.t_final",
            "must be non-negative",
        ));
    }
    let stride: usize = e.parse("time.stride", "a positive integer")?.unwrap_or(1);
    if stride == 0 {
        return Err(err(
            e.line("time.stride"),
            "time.stride",
            "must be positive",
        ));
    }

    let ic = ic_config(&e, &grid)?;
    let out_dir = e
        .get("out.dir")
        .map_or_else(|| PathBuf::from("out"), |d| PathBuf::from(&d.value));

    let limit_deltas = e.reals("limits.deltas")?.unwrap_or_default();
    if let Some(d) = limit_deltas.iter().find(|d| **d <= 0.0) {
        return Err(err(
            e.line("limits.deltas"),
            "limits.deltas",
            format!("must be positive, got {d}"),
        ));
    }
    let probe = probe_config(&e, &model, &grid)?;

    Ok(RunConfig {
        model,
        grid_n,
        grid_length,
        dt,
        t_final,
        stride,
        ic,
        out_dir,
        limit_deltas,
        probe,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const BASE: &str = "\
model = bo
grid.n = 1024
grid.length = 100
time.dt = 1e-3
time.t_final = 1
ic.kind = gaussian
ic.params = 1, 0, 2
";

    fn config_err(text: &str) -> (usize, String, String) {
        match parse_config(text).unwrap_err() {
            Error::Config { line, key, message } => (line, key, message),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn happy_path() {
        let c = parse_config(BASE).unwrap();
        assert_eq!(c.model, ModelConfig::Bo);
        assert_eq!(
            (c.grid_n, c.grid_length, c.dt, c.t_final, c.stride),
            (1024, 100.0, 1e-3, 1.0, 1)
        );
        assert_eq!(c.ic.params, vec![1.0, 0.0, 2.0]);
        assert_eq!(c.out_dir, PathBuf::from("out"));
        assert_eq!(c.initial_field().unwrap().sup_norm(), 1.0);
    }

    #[test]
    fn comments_blank_lines_and_spacing() {
        let text = format!("# header\n\n{BASE}time.stride=10   # every tenth\nout.dir = /tmp/x\n");
        let c = parse_config(&text).unwrap();
        assert_eq!(c.stride, 10);
        assert_eq!(c.out_dir, PathBuf::from("/tmp/x"));
    }

    #[test]
    fn ilw_requires_delta() {
        let (line, key, msg) = config_err(&BASE.replace("model = bo", "model = ilw"));
        assert_eq!(
            (line, key.as_str(), msg.as_str()),
            (1, "delta", "ilw requires delta")
        );
        let c = parse_config(&format!(
            "{}delta = 2.5\n",
            BASE.replace("model = bo", "model = ilw")
        ))
        .unwrap();
        assert_eq!(c.model, ModelConfig::Ilw { delta: 2.5 });
    }

    #[test]
    fn odd_n_rejected_even_non_power_of_two_accepted() {
        let (line, key, _) = config_err(&BASE.replace("grid.n = 1024", "grid.n = 1001"));
        assert_eq!((line, key.as_str()), (2, "grid.n"));
        assert_eq!(
            parse_config(&BASE.replace("grid.n = 1024", "grid.n = 1000"))
                .unwrap()
                .grid_n,
            1000
        );
    }

    #[test]
    fn unknown_key_names_line() {
        let (line, key, msg) = config_err(&format!("{BASE}grid.lenght = 3\n"));
        assert_eq!(
            (line, key.as_str(), msg.as_str()),
            (8, "grid.lenght", "unknown key")
        );
        let e = parse_config(&format!("{BASE}grid.lenght = 3\n")).unwrap_err();
        assert_eq!(e.to_string(), "line 8: grid.lenght: unknown key");
    }

    #[test]
    fn type_mismatch_and_missing() {
        let (line, key, msg) = config_err(&BASE.replace("time.dt = 1e-3", "time.dt = fast"));
        assert_eq!((line, key.as_str()), (4, "time.dt"));
        assert!(msg.contains("expected a real number"));
        let (line, key, msg) = config_err(&BASE.replace("time.dt = 1e-3\n", ""));
        assert_eq!(
            (line, key.as_str(), msg.as_str()),
            (0, "time.dt", "missing required key")
        );
        assert_eq!(
            parse_config(&BASE.replace("time.dt = 1e-3\n", ""))
                .unwrap_err()
                .to_string(),
            "time.dt: missing required key"
        );
        assert!(
            matches!(config_err(&format!("{BASE}model = kdv\n")), (8, _, m) if m.contains("duplicate"))
        );
        assert_eq!(config_err("model\n").0, 1);
    }

    #[test]
    fn model_specific_keys() {
        assert!(config_err(&format!("{BASE}k = 3\n"))
            .2
            .contains("not used by model=bo"));
        let gbo = BASE.replace("model = bo", "model = gbo");
        assert_eq!(config_err(&gbo).1, "k");
        assert_eq!(config_err(&format!("{gbo}k = 1\n")).1, "k");
        assert_eq!(
            parse_config(&format!("{gbo}k = 3\n")).unwrap().model,
            ModelConfig::Gbo { k: 3 }
        );
        assert!(config_err(&BASE.replace("model = bo", "model = wave"))
            .2
            .contains("unknown model"));
    }

    #[test]
    fn general_linear_expressions() {
        let text = format!(
            "{}j = 2\nb = 1 + 0.5*sin(2*pi*x/100)\na1 = 0.1*t\n",
            BASE.replace("model = bo", "model = general")
        );
        let c = parse_config(&text).unwrap();
        let EquationSpec::GeneralLinear(g) = c.equation() else {
            panic!("wrong model")
        };
        assert_eq!(g.j, 2);
        assert_eq!(g.a.len(), 2);
        assert_eq!(g.a[0].eval(1.0, 2.0), 0.0);
        assert!((g.a[1].eval(1.0, 2.0) - 0.2).abs() < 1e-15);
        assert!((g.b.eval(25.0, 0.0) - 1.5).abs() < 1e-15);
        let bad = text.replace("a1 = 0.1*t", "a1 = 0.1*y");
        let (line, key, _) = config_err(&bad);
        assert_eq!((line, key.as_str()), (10, "a1"));
    }

    #[test]
    fn ic_validation() {
        assert!(
            config_err(&BASE.replace("ic.params = 1, 0, 2", "ic.params = 1, 0"))
                .2
                .contains("amp, center, width")
        );
        assert!(
            config_err(&BASE.replace("ic.kind = gaussian", "ic.kind = square"))
                .2
                .contains("unknown kind")
        );
        let sol = BASE.replace("ic.kind = gaussian", "ic.kind = soliton");
        assert!(parse_config(&sol.replace("ic.params = 1, 0, 2", "ic.params = 1, 0")).is_ok());
        assert!(
            config_err(&sol.replace("ic.params = 1, 0, 2", "ic.params = 0.01, 0"))
                .2
                .contains("2π/L")
        );
        let zero = BASE
            .replace("ic.kind = gaussian", "ic.kind = zero")
            .replace("ic.params = 1, 0, 2\n", "");
        assert_eq!(
            parse_config(&zero)
                .unwrap()
                .initial_field()
                .unwrap()
                .sup_norm(),
            0.0
        );
        let modes = BASE.replace("ic.kind = gaussian", "ic.kind = modes");
        assert!(parse_config(&modes.replace("1, 0, 2", "3, 1, 0, 5, 0, 0.5")).is_ok());
        assert!(config_err(&modes.replace("1, 0, 2", "2.5, 1, 0"))
            .2
            .contains("integer"));
    }

    #[test]
    fn probe_and_limits_keys() {
        let text = format!(
            "{BASE}limits.deltas = 5, 10, 20\nprobe.interval = 2, 3\nprobe.delta = 1\nprobe.x0 = 0\nprobe.radii = 0.4, 0.2, 0.1, 0.05\n"
        );
        let c = parse_config(&text).unwrap();
        assert_eq!(c.limit_deltas, vec![5.0, 10.0, 20.0]);
        assert_eq!(c.probe.interval, Some([2.0, 3.0]));
        assert_eq!(
            c.probe.partners(),
            vec![Partner::Hilbert, Partner::IlwDx { delta: 1.0 }]
        );
        let no_delta = text.replace("probe.delta = 1\n", "");
        assert_eq!(config_err(&no_delta).1, "probe.delta");
        assert!(
            config_err(&text.replace("probe.interval = 2, 3", "probe.interval = 3, 2"))
                .2
                .contains("a < b")
        );
        assert_eq!(
            config_err(&text.replace("probe.x0 = 0\n", "")).1,
            "probe.x0"
        );
    }

    #[test]
    fn print_parse_round_trip() {
        let text = format!(
            "{}j = 1\nb = 2 - cos(x)\na0 = exp(-t)\nprobe.interval = -1, 1\nprobe.partner = hilbert\nout.dir = results/run 1\n",
            BASE.replace("model = bo", "model = general")
        );
        let c = parse_config(&text).unwrap();
        let printed = c.to_text();
        let again = parse_config(&printed).unwrap();
        assert_eq!(again, c);
        assert_eq!(again.to_text(), printed);
    }

    fn arb_config_text() -> impl Strategy<Value = String> {
        (
            prop_oneof![
                Just("model = bo".to_string()),
                Just("model = bh".to_string()),
                Just("model = kdv".to_string()),
                (2u32..6).prop_map(|k| format!("model = gbo\nk = {k}")),
                (1e-3f64..1e3).prop_map(|d| format!("model = ilw\ndelta = {d}")),
            ],
            (4usize..512).prop_map(|h| 2 * h),
            1e-2f64..1e4,
            1e-6f64..1.0,
            0.0f64..10.0,
            1usize..100,
            (-10.0f64..10.0, -1.0f64..1.0, 1e-3f64..5.0),
            proptest::collection::vec(1e-3f64..100.0, 0..5),
        )
            .prop_map(|(model, n, l, dt, t, stride, (amp, c, w), deltas)| {
                let mut s = format!(
                    "{model}\ngrid.n = {n}\ngrid.length = {l}\ntime.dt = {dt}\ntime.t_final = {t}\n\
                     time.stride = {stride}\nic.kind = bump\nic.params = {amp}, {}, {w}\n",
                    c * l / 2.0
                );
                if !deltas.is_empty() {
                    let d: Vec<String> = deltas.iter().map(|d| d.to_string()).collect();
                    s.push_str(&format!("limits.deltas = {}\n", d.join(",")));
                }
                s
            })
    }

    proptest! {
        #[test]
        fn parse_print_parse_is_idempotent(text in arb_config_text()) {
            let c = parse_config(&text).unwrap();
            let again = parse_config(&c.to_text()).unwrap();
            prop_assert_eq!(&again, &c);
            prop_assert_eq!(again.to_text(), c.to_text());
        }
    }
}
