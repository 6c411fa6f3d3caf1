use std::collections::{BTreeMap, HashMap};

use serde_json::{json, Value};

use super::morphism::{product_precision, Morphism};
use super::{AInf, AInfError};
use crate::novikov::{series_from_value, series_to_value, Exponent, Gaussian, NovikovSeries};
use crate::rational::{rational_from_value, rational_to_value, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisElement {
    pub name: String,
    pub degree: i32,
    pub filtration: Rational,
}

impl BasisElement {
    pub fn new(name: &str, degree: i32) -> Self {
        Self {
            name: name.to_string(),
            degree,
            filtration: Rational::from_integer(0.into()),
        }
    }

    pub fn with_filtration(mut self, f: Rational) -> Self {
        self.filtration = f;
        self
    }
}

#[derive(Clone, Debug)]
struct MuEntry {
    inputs: Vec<usize>,
    output: usize,
    coeff: NovikovSeries,
}

type EntryKey = (Vec<usize>, Vec<usize>);

/// An A∞ category given by explicit sparse structure tables.
///
/// Build with [`AInfCategory::new`], [`set_hom`](Self::set_hom),
/// [`set_unit`](Self::set_unit) and [`add_mu`](Self::add_mu), then call
/// [`finish`](Self::finish), which adds the strict-unit products and
/// validates degrees and filtrations.
#[derive(Clone, Debug)]
pub struct AInfCategory {
    objects: Vec<String>,
    homs: Vec<Vec<Vec<BasisElement>>>,
    units: Vec<Option<usize>>,
    raw: BTreeMap<EntryKey, BTreeMap<usize, NovikovSeries>>,
    tables: HashMap<Vec<usize>, Vec<MuEntry>>,
    max_arity: usize,
    floor: Exponent,
    truncation: Exponent,
}

impl AInfCategory {
    pub fn new(objects: &[&str], truncation: Exponent) -> Self {
        let n = objects.len();
        Self {
            objects: objects.iter().map(|s| s.to_string()).collect(),
            homs: vec![vec![Vec::new(); n]; n],
            units: vec![None; n],
            raw: BTreeMap::new(),
            tables: HashMap::new(),
            max_arity: 0,
            floor: Exponent::zero(),
            truncation,
        }
    }

    pub fn set_hom(&mut self, x: usize, y: usize, basis: Vec<BasisElement>) {
        self.homs[x][y] = basis;
    }

    pub fn set_unit(&mut self, x: usize, b: usize) {
        self.units[x] = Some(b);
    }

    pub fn object_index(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn basis_index(&self, x: usize, y: usize, name: &str) -> Option<usize> {
        self.homs[x][y].iter().position(|b| b.name == name)
    }

    pub fn basis_elements(&self, x: usize, y: usize) -> &[BasisElement] {
        &self.homs[x][y]
    }

    /// Adds `coeff · output` to `μ(inputs)` along the object path `path`.
    pub fn add_mu(
        &mut self,
        path: &[usize],
        inputs: &[usize],
        output: usize,
        coeff: NovikovSeries,
    ) {
        assert_eq!(path.len(), inputs.len() + 1, "object path length");
        let slot = self
            .raw
            .entry((path.to_vec(), inputs.to_vec()))
            .or_default();
        let cur = slot.remove(&output);
        slot.insert(
            output,
            match cur {
                Some(c) => &c + &coeff,
                None => coeff,
            },
        );
    }

    pub fn add_mu_int(&mut self, path: &[usize], inputs: &[usize], output: usize, c: i64) {
        let s = NovikovSeries::from_int(c, self.truncation.clone());
        self.add_mu(path, inputs, output, s);
    }

    fn unit_products(&self) -> Vec<(EntryKey, usize, i64)> {
        let n = self.objects.len();
        let mut out = Vec::new();
        for (x, u) in self.units.iter().enumerate() {
            let Some(u) = *u else { continue };
            for y in 0..n {
                for b in 0..self.homs[x][y].len() {
                    out.push(((vec![x, x, y], vec![u, b]), b, 1));
                }
                for (b, be) in self.homs[y][x].iter().enumerate() {
                    if y == x && b == u {
                        continue;
                    }
                    let sign = if be.degree.rem_euclid(2) == 0 { 1 } else { -1 };
                    out.push(((vec![y, x, x], vec![b, u]), b, sign));
                }
            }
        }
        out
    }

    /// Adds strict-unit products, validates, and compiles the tables.
    pub fn finish(mut self) -> Result<Self, AInfError> {
        let n = self.objects.len();
        for (x, u) in self.units.iter().enumerate() {
            if let Some(u) = *u {
                let be = self.homs[x][x].get(u).ok_or(AInfError::BasisOutOfRange {
                    x,
                    y: x,
                    index: u,
                })?;
                if be.degree != 0 {
                    return Err(AInfError::UnitViolation(format!(
                        "unit of {} has degree {}",
                        self.objects[x], be.degree
                    )));
                }
            }
        }
        let unit_set: Vec<(usize, usize)> = self
            .units
            .iter()
            .enumerate()
            .filter_map(|(x, u)| u.map(|u| (x, u)))
            .collect();
        let is_unit = |path: &[usize], k: usize, b: usize| {
            path[k] == path[k + 1] && unit_set.contains(&(path[k], b))
        };
        // User-supplied entries with a unit input must match the implied ones.
        let mut implied: BTreeMap<EntryKey, BTreeMap<usize, i64>> = BTreeMap::new();
        for (key, out, c) in self.unit_products() {
            implied.entry(key).or_default().insert(out, c);
        }
        for ((path, inputs), outs) in &self.raw {
            let has_unit = (0..inputs.len()).any(|k| is_unit(path, k, inputs[k]));
            if !has_unit {
                continue;
            }
            let expect = implied.get(&(path.clone(), inputs.clone()));
            let ok = outs.iter().filter(|(_, c)| !c.is_zero()).all(|(o, c)| {
                expect
                    .and_then(|e| e.get(o))
                    .is_some_and(|&k| c == &NovikovSeries::from_int(k, c.truncation().clone()))
            });
            if !ok {
                return Err(AInfError::UnitViolation(format!(
                    "entry with unit input {inputs:?} on path {path:?}"
                )));
            }
        }
        for (key, outs) in implied {
            for (o, c) in outs {
                let slot = self.raw.entry(key.clone()).or_default();
                slot.insert(o, NovikovSeries::from_int(c, self.truncation.clone()));
            }
        }

        let mut tables: HashMap<Vec<usize>, Vec<MuEntry>> = HashMap::new();
        let mut max_arity = 0;
        let mut floor: Option<Exponent> = None;
        for ((path, inputs), outs) in &self.raw {
            let d = inputs.len();
            if d == 0 {
                return Err(AInfError::Schema("curved terms are not supported".into()));
            }
            for &p in path {
                if p >= n {
                    return Err(AInfError::ObjectOutOfRange(p));
                }
            }
            let mut deg = 2 - d as i32;
            let mut filt = Rational::from_integer(0.into());
            for (k, &b) in inputs.iter().enumerate() {
                let be =
                    self.homs[path[k]][path[k + 1]]
                        .get(b)
                        .ok_or(AInfError::BasisOutOfRange {
                            x: path[k],
                            y: path[k + 1],
                            index: b,
                        })?;
                deg += be.degree;
                filt += &be.filtration;
            }
            let (x0, xd) = (path[0], path[d]);
            for (&o, c) in outs {
                if c.is_zero() {
                    continue;
                }
                let be = self.homs[x0][xd].get(o).ok_or(AInfError::BasisOutOfRange {
                    x: x0,
                    y: xd,
                    index: o,
                })?;
                let names: Vec<String> = inputs
                    .iter()
                    .enumerate()
                    .map(|(k, &b)| self.homs[path[k]][path[k + 1]][b].name.clone())
                    .collect();
                if be.degree != deg {
                    return Err(AInfError::DegreeViolation(format!(
                        "mu{d}({}) -> {} has degree {}, expected {deg}",
                        names.join(","),
                        be.name,
                        be.degree
                    )));
                }
                if be.filtration < filt {
                    return Err(AInfError::FiltrationViolation(format!(
                        "mu{d}({}) -> {}",
                        names.join(","),
                        be.name
                    )));
                }
                let v = c.val_floor();
                floor = Some(match floor {
                    Some(f) if f <= v => f,
                    _ => v,
                });
                max_arity = max_arity.max(d);
                tables.entry(path.clone()).or_default().push(MuEntry {
                    inputs: inputs.clone(),
                    output: o,
                    coeff: c.clone(),
                });
            }
        }
        self.tables = tables;
        self.max_arity = max_arity;
        self.floor = floor.unwrap_or_else(Exponent::zero);
        Ok(self)
    }

    pub fn from_json(v: &Value, default_truncation: Option<&Exponent>) -> Result<Self, AInfError> {
        let schema = |m: &str| AInfError::Schema(m.to_string());
        let truncation = match v.get("truncation") {
            Some(t) => Exponent::new(rational_from_value(t).map_err(AInfError::Schema)?),
            None => default_truncation
                .cloned()
                .ok_or_else(|| schema("missing truncation"))?,
        };
        let objects: Vec<String> = v
            .get("objects")
            .and_then(Value::as_array)
            .ok_or_else(|| schema("missing objects"))?
            .iter()
            .map(|o| {
                o.as_str()
                    .map(str::to_string)
                    .ok_or_else(|| schema("object names must be strings"))
            })
            .collect::<Result<_, _>>()?;
        let names: Vec<&str> = objects.iter().map(String::as_str).collect();
        let mut cat = AInfCategory::new(&names, truncation.clone());
        let obj = |cat: &AInfCategory, n: &Value| -> Result<usize, AInfError> {
            let s = n
                .as_str()
                .ok_or_else(|| schema("object reference must be a string"))?;
            cat.object_index(s)
                .ok_or_else(|| AInfError::Schema(format!("unknown object {s}")))
        };
        for h in v
            .get("homs")
            .and_then(Value::as_array)
            .ok_or_else(|| schema("missing homs"))?
        {
            let x = obj(
                &cat,
                h.get("source")
                    .ok_or_else(|| schema("hom without source"))?,
            )?;
            let y = obj(
                &cat,
                h.get("target")
                    .ok_or_else(|| schema("hom without target"))?,
            )?;
            let mut basis = Vec::new();
            for b in h
                .get("basis")
                .and_then(Value::as_array)
                .ok_or_else(|| schema("hom without basis"))?
            {
                let name = b
                    .get("name")
                    .and_then(Value::as_str)
                    .ok_or_else(|| schema("basis element without name"))?;
                let degree = b
                    .get("degree")
                    .and_then(Value::as_i64)
                    .ok_or_else(|| schema("basis element without degree"))?;
                let filtration = match b.get("filtration") {
                    Some(f) => rational_from_value(f).map_err(AInfError::Schema)?,
                    None => Rational::from_integer(0.into()),
                };
                basis.push(BasisElement {
                    name: name.to_string(),
                    degree: degree as i32,
                    filtration,
                });
            }
            cat.set_hom(x, y, basis);
        }
        if let Some(units) = v.get("units").and_then(Value::as_object) {
            for (o, b) in units {
                let x = cat
                    .object_index(o)
                    .ok_or_else(|| AInfError::Schema(format!("unknown object {o}")))?;
                let name = b
                    .as_str()
                    .ok_or_else(|| schema("unit must name a basis element"))?;
                let u = cat
                    .basis_index(x, x, name)
                    .ok_or_else(|| AInfError::Schema(format!("unknown unit {name}")))?;
                cat.set_unit(x, u);
            }
        }
        for entry in v
            .get("mu")
            .and_then(Value::as_array)
            .ok_or_else(|| schema("missing mu"))?
        {
            let inputs: Vec<&str> = entry
                .get("inputs")
                .and_then(Value::as_array)
                .ok_or_else(|| schema("mu entry without inputs"))?
                .iter()
                .map(|s| {
                    s.as_str()
                        .ok_or_else(|| schema("input names must be strings"))
                })
                .collect::<Result<_, _>>()?;
            let path: Vec<usize> = match entry.get("objects") {
                Some(p) => p
                    .as_array()
                    .ok_or_else(|| schema("objects must be a list"))?
                    .iter()
                    .map(|n| obj(&cat, n))
                    .collect::<Result<_, _>>()?,
                None if cat.objects.len() == 1 => vec![0; inputs.len() + 1],
                None => return Err(schema("mu entry needs an object path")),
            };
            if path.len() != inputs.len() + 1 {
                return Err(schema("object path must have one more entry than inputs"));
            }
            let idx: Vec<usize> = inputs
                .iter()
                .enumerate()
                .map(|(k, n)| {
                    cat.basis_index(path[k], path[k + 1], n)
                        .ok_or_else(|| AInfError::Schema(format!("unknown basis element {n}")))
                })
                .collect::<Result<_, _>>()?;
            let out_name = entry
                .get("output")
                .and_then(Value::as_str)
                .ok_or_else(|| schema("mu entry without output"))?;
            let out = cat
                .basis_index(path[0], *path.last().unwrap(), out_name)
                .ok_or_else(|| AInfError::Schema(format!("unknown basis element {out_name}")))?;
            let coeff = coeff_from_value(entry.get("coeff").unwrap_or(&json!(1)), &truncation)?;
            cat.add_mu(&path, &idx, out, coeff);
        }
        cat.finish()
    }

    /// JSON form, listing only entries that are not implied by strict units.
    pub fn to_json(&self) -> Value {
        let n = self.objects.len();
        let mut homs = Vec::new();
        for x in 0..n {
            for y in 0..n {
                if self.homs[x][y].is_empty() {
                    continue;
                }
                let basis: Vec<Value> = self.homs[x][y]
                    .iter()
                    .map(|b| json!({"name": b.name, "degree": b.degree, "filtration": rational_to_value(&b.filtration)}))
                    .collect();
                homs.push(
                    json!({"source": self.objects[x], "target": self.objects[y], "basis": basis}),
                );
            }
        }
        let mut units = serde_json::Map::new();
        for (x, u) in self.units.iter().enumerate() {
            if let Some(u) = u {
                units.insert(self.objects[x].clone(), json!(self.homs[x][x][*u].name));
            }
        }
        let implied: Vec<EntryKey> = self.unit_products().into_iter().map(|(k, ..)| k).collect();
        let mut mu = Vec::new();
        for ((path, inputs), outs) in &self.raw {
            if implied.contains(&(path.clone(), inputs.clone())) {
                continue;
            }
            for (o, c) in outs {
                if c.is_zero() {
                    continue;
                }
                let names: Vec<&str> = inputs
                    .iter()
                    .enumerate()
                    .map(|(k, &b)| self.homs[path[k]][path[k + 1]][b].name.as_str())
                    .collect();
                let objs: Vec<&str> = path.iter().map(|&p| self.objects[p].as_str()).collect();
                mu.push(json!({
                    "objects": objs,
                    "inputs": names,
                    "output": self.homs[path[0]][*path.last().unwrap()][*o].name,
                    "coeff": series_to_value(c),
                }));
            }
        }
        json!({
            "truncation": rational_to_value(self.truncation.value()),
            "objects": self.objects,
            "homs": homs,
            "units": units,
            "mu": mu,
        })
    }
}

/// A coefficient: a rational (number, `"p/q"`, `[n, d]`) or a series literal.
pub fn coeff_from_value(v: &Value, truncation: &Exponent) -> Result<NovikovSeries, AInfError> {
    let is_series = match v {
        Value::Object(_) => true,
        Value::Array(items) => items.iter().all(Value::is_array),
        _ => false,
    };
    if is_series {
        return Ok(series_from_value(v, Some(truncation))?);
    }
    let r = rational_from_value(v).map_err(AInfError::Schema)?;
    Ok(NovikovSeries::constant(
        Gaussian::real(r),
        truncation.clone(),
    ))
}

impl AInf for AInfCategory {
    fn num_objects(&self) -> usize {
        self.objects.len()
    }

    fn object_name(&self, x: usize) -> String {
        self.objects[x].clone()
    }

    fn hom_dim(&self, x: usize, y: usize) -> usize {
        self.homs[x][y].len()
    }

    fn degree(&self, x: usize, y: usize, b: usize) -> i32 {
        self.homs[x][y][b].degree
    }

    fn filtration(&self, x: usize, y: usize, b: usize) -> Rational {
        self.homs[x][y][b].filtration.clone()
    }

    fn basis_name(&self, x: usize, y: usize, b: usize) -> String {
        self.homs[x][y][b].name.clone()
    }

    fn max_arity(&self) -> usize {
        self.max_arity
    }

    fn truncation(&self) -> &Exponent {
        &self.truncation
    }

    fn structure_floor(&self) -> Exponent {
        self.floor.clone()
    }

    fn mu(&self, inputs: &[&Morphism]) -> Result<Morphism, AInfError> {
        let path = composable_path(inputs, self.objects.len())?;
        let (x0, xd) = (path[0], *path.last().unwrap());
        let mut acc: BTreeMap<usize, NovikovSeries> = BTreeMap::new();
        if let Some(entries) = self.tables.get(&path) {
            'entry: for e in entries {
                let mut prod = e.coeff.clone();
                for (k, &b) in e.inputs.iter().enumerate() {
                    match inputs[k].get(b) {
                        Some(c) => prod = &prod * c,
                        None => continue 'entry,
                    }
                }
                let cur = acc.remove(&e.output);
                acc.insert(
                    e.output,
                    match cur {
                        Some(c) => &c + &prod,
                        None => prod,
                    },
                );
            }
        }
        let prec = std::cmp::min(
            product_precision(inputs, &self.floor),
            self.truncation.clone(),
        );
        Ok(Morphism::from_coeffs(x0, xd, acc, prec))
    }

    fn unit(&self, x: usize) -> Option<Morphism> {
        self.units[x].map(|u| self.basis(x, x, u))
    }
}

/// Object path `X_0, …, X_d` of composable inputs.
pub(crate) fn composable_path(inputs: &[&Morphism], n: usize) -> Result<Vec<usize>, AInfError> {
    let first = inputs.first().ok_or(AInfError::EmptyInput)?;
    let mut path = vec![first.src];
    for (k, m) in inputs.iter().enumerate() {
        if m.src != *path.last().unwrap() {
            return Err(AInfError::NotComposable(k));
        }
        path.push(m.tgt);
    }
    if let Some(&bad) = path.iter().find(|&&p| p >= n) {
        return Err(AInfError::ObjectOutOfRange(bad));
    }
    Ok(path)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tiny() -> AInfCategory {
        let mut c = AInfCategory::new(&["C"], Exponent::from_int(4));
        c.set_hom(
            0,
            0,
            vec![BasisElement::new("e", 0), BasisElement::new("x", 1)],
        );
        c.set_unit(0, 0);
        c
    }

    #[test]
    fn units_are_injected() {
        let c = tiny().finish().unwrap();
        let e = c.unit(0).unwrap();
        let x = c.basis(0, 0, 1);
        assert_eq!(c.mu(&[&e, &x]).unwrap(), x);
        assert_eq!(c.mu(&[&x, &e]).unwrap(), x.neg());
        assert_eq!(c.mu(&[&e, &e]).unwrap(), e);
        assert_eq!(c.max_arity(), 2);
    }

    #[test]
    fn rejects_wrong_degree() {
        let mut c = tiny();
        c.add_mu_int(&[0, 0, 0], &[1, 1], 1, 1);
        assert!(matches!(c.finish(), Err(AInfError::DegreeViolation(_))));
    }

    #[test]
    fn rejects_inconsistent_unit_entry() {
        let mut c = tiny();
        c.add_mu_int(&[0, 0, 0], &[0, 1], 1, 2);
        assert!(matches!(c.finish(), Err(AInfError::UnitViolation(_))));
    }

    #[test]
    fn rejects_filtration_drop() {
        let mut c = AInfCategory::new(&["C"], Exponent::from_int(4));
        c.set_hom(
            0,
            0,
            vec![
                BasisElement::new("a", 1).with_filtration(Rational::from_integer(1.into())),
                BasisElement::new("b", 2),
            ],
        );
        c.add_mu_int(&[0, 0, 0], &[0, 0], 1, 1);
        assert!(matches!(c.finish(), Err(AInfError::FiltrationViolation(_))));
    }

    #[test]
    fn json_round_trip() {
        let mut c = tiny();
        c.set_hom(
            0,
            0,
            vec![
                BasisElement::new("e", 0),
                BasisElement::new("x", 1),
                BasisElement::new("y", 2),
            ],
        );
        c.add_mu_int(&[0, 0, 0], &[1, 1], 2, 3);
        let c = c.finish().unwrap();
        let back = AInfCategory::from_json(&c.to_json(), None).unwrap();
        let x = c.basis(0, 0, 1);
        assert_eq!(back.mu(&[&x, &x]).unwrap(), c.mu(&[&x, &x]).unwrap());
        assert_eq!(back.to_json(), c.to_json());
    }

    #[test]
    fn not_composable() {
        let c = tiny().finish().unwrap();
        let m = Morphism::zero(0, 1, Exponent::from_int(4));
        assert!(c.mu(&[&m]).is_err());
    }
}
