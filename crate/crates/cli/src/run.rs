//! Command execution. Every command yields a JSON value and a plain-text
//! rendering of the same data.

use std::fmt::Write;

use clusterkit_core::oracle::{self, OracleConfig};
use clusterkit_core::{
    cluster_decompose_in, compute_cluster_in, decompose_wrt_in, extend_cluster, induce_in, is_amenable, splitting_degree,
    Cluster, Elem, Error, FiniteField, LieModule, Matrix, Tower,
};
use serde_json::{json, Value};

use crate::document::{scalar, Document, ParseError, Scalar, Task};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Command {
    Check,
    Cluster,
    Decompose,
    Amenable,
    Induce,
    Homcluster,
    OracleCompare,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Check => "check",
            Command::Cluster => "cluster",
            Command::Decompose => "decompose",
            Command::Amenable => "amenable",
            Command::Induce => "induce",
            Command::Homcluster => "homcluster",
            Command::OracleCompare => "oracle-compare",
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct Options {
    pub wrt: Option<String>,
    pub alpha: Option<i64>,
    pub beta: Option<i64>,
    pub splitting_degree: Option<usize>,
    pub oracle_bound: Option<u64>,
}

pub struct Report {
    pub json: Value,
    pub text: String,
    pub warnings: Vec<String>,
}

/// Failure of a command after parsing.
pub enum Failure {
    Core(Error),
    /// Validation failure with the list of violated axioms.
    Violations(String, Vec<String>),
    /// The report was produced, but it records a disagreement.
    Disagreement(Report),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

pub fn scalar_json(f: &FiniteField, a: Elem) -> Value {
    if f.degree() == 1 {
        json!(a.0)
    } else {
        json!(f.coeffs(a))
    }
}

fn matrix_json(m: &Matrix) -> Value {
    Value::Array(m.to_rows().iter().map(|r| Value::Array(r.iter().map(|&a| scalar_json(m.field(), a)).collect())).collect())
}

fn field_json(f: &FiniteField) -> Value {
    json!({ "p": f.characteristic(), "degree": f.degree(), "modulus": f.modulus_string() })
}

fn field_name(f: &FiniteField) -> String {
    if f.degree() == 1 {
        format!("GF({})", f.size())
    } else {
        format!("GF({}) = GF({})[t]/({})", f.size(), f.characteristic(), f.modulus_string())
    }
}

fn cluster_json(c: &Cluster) -> Value {
    Value::Array(c.chars().iter().map(|ch| Value::Array(ch.values().iter().map(|&a| scalar_json(c.field(), a)).collect())).collect())
}

fn cluster_text(c: &Cluster, names: &[String], out: &mut String, indent: &str) {
    for (n, ch) in c.chars().iter().enumerate() {
        let vals: Vec<String> =
            names.iter().zip(ch.values()).map(|(x, &a)| format!("c({x}) = {}", c.field().format_elem(a))).collect();
        let _ = writeln!(out, "{indent}c{}: {}", n + 1, vals.join(", "));
    }
}

fn matrix_text(m: &Matrix, out: &mut String, indent: &str) {
    let cells: Vec<Vec<String>> = m.to_rows().iter().map(|r| r.iter().map(|&a| m.field().format_elem(a)).collect()).collect();
    let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
    for row in cells {
        let padded: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
        let _ = writeln!(out, "{indent}[{}]", padded.join(" "));
    }
}

fn vector_text(f: &FiniteField, v: &[Elem]) -> String {
    let parts: Vec<String> = v.iter().map(|&a| f.format_elem(a)).collect();
    format!("({})", parts.join(", "))
}

struct Runner<'a> {
    doc: &'a Document,
    opts: &'a Options,
    warnings: Vec<String>,
}

impl<'a> Runner<'a> {
    /// Extension of degree `minimum`, or the requested degree when it is a
    /// multiple of it; a mismatch only produces a warning.
    fn tower(&mut self, minimum: usize, what: &str) -> Result<Tower, Error> {
        let degree = match self.opts.splitting_degree {
            None => minimum,
            Some(d) if d == minimum => d,
            Some(d) if d > 0 && d % minimum == 0 => {
                self.warnings.push(format!("{what}: using splitting degree {d}; the minimum is {minimum}"));
                d
            }
            Some(d) => {
                let l = lcm(d.max(1), minimum);
                self.warnings.push(format!(
                    "{what}: splitting degree {d} is not a multiple of the minimum {minimum}; using {l}"
                ));
                l
            }
        };
        Tower::new(&self.doc.field, degree)
    }

    fn module(&self, name: &str) -> &'a LieModule {
        &self.doc.modules[name]
    }

    fn cluster(&mut self, name: &str) -> Result<(Value, String), Error> {
        let m = self.module(name);
        let tower = self.tower(splitting_degree(m)?, name)?;
        let cl = compute_cluster_in(m, &tower)?;
        let k = tower.ext();
        let orbits: Vec<Value> = cl
            .orbits()
            .iter()
            .map(|o| Value::Array(o.chars().iter().map(|c| json!(cl.chars().iter().position(|d| d == c))).collect()))
            .collect();
        let mut text = format!("cluster of {name} over {}\n", field_name(k));
        cluster_text(&cl, m.algebra().names(), &mut text, "  ");
        let _ = writeln!(text, "  {} character(s), {} conjugacy class(es)", cl.len(), orbits.len());
        let value = json!({
            "task": "cluster",
            "module": name,
            "splitting_field": field_json(k),
            "characters": cluster_json(&cl),
            "orbits": orbits,
            "simple": orbits.len() == 1,
        });
        Ok((value, text))
    }

    fn decompose(&mut self, name: &str, wrt: Option<&str>) -> Result<(Value, String), Error> {
        let m = self.module(name);
        let tower = self.tower(splitting_degree(m)?, name)?;
        let dec = match wrt {
            None => cluster_decompose_in(m, &tower)?,
            Some(s) => {
                if self.doc.module_over.contains_key(name) {
                    return Err(Error::Precondition(format!("module {name} is not over the whole algebra")));
                }
                decompose_wrt_in(m, &self.doc.subalgebras[s], &tower)?
            }
        };
        let f = m.field();
        let names: Vec<String> = dec.indices.iter().map(|&i| m.algebra().names()[i].clone()).collect();
        let mut text = format!("decomposition of {name}");
        if let Some(s) = wrt {
            let _ = write!(text, " with respect to {s}");
        }
        let _ = writeln!(text, ", characters over {}", field_name(tower.ext()));
        let mut parts = Vec::new();
        for (n, part) in dec.parts.iter().enumerate() {
            let _ = writeln!(text, "  part {n}: dim {}, exponent {}", part.space.dim(), part.exponent);
            cluster_text(&part.cluster, &names, &mut text, "    ");
            for v in part.space.basis() {
                let _ = writeln!(text, "    basis {}", vector_text(f, v));
            }
            parts.push(json!({
                "dim": part.space.dim(),
                "exponent": part.exponent,
                "characters": cluster_json(&part.cluster),
                "basis": part.space.basis().iter().map(|v| v.iter().map(|&a| scalar_json(f, a)).collect::<Vec<_>>()).collect::<Vec<_>>(),
            }));
        }
        let value = json!({
            "task": "decompose",
            "module": name,
            "wrt": wrt,
            "elements": names,
            "splitting_field": field_json(tower.ext()),
            "parts": parts,
        });
        Ok((value, text))
    }

    fn amenable(&mut self, name: &str) -> Result<(Value, String), Error> {
        let m = self.module(name);
        let report = is_amenable(m)?;
        let mut text = format!("amenability of {name}: {}\n", if report.is_amenable() { "amenable" } else { "not amenable" });
        let mut polys = Vec::new();
        for ((x, mp), &sf) in m.algebra().names().iter().zip(&report.min_polys).zip(&report.squarefree) {
            let _ = writeln!(text, "  phi({x}): minimal polynomial {mp}{}", if sf { "" } else { " (repeated factor)" });
            polys.push(json!({ "element": x, "min_poly": mp.to_string(), "squarefree": sf }));
        }
        Ok((json!({ "task": "amenable", "module": name, "amenable": report.is_amenable(), "phi": polys }), text))
    }

    fn induce(&mut self, name: &str, sub_name: &str, values: &[Scalar]) -> Result<(Value, String), Error> {
        let w = self.module(name);
        let sub = &self.doc.subalgebras[sub_name];
        if self.doc.module_over.get(name).map(String::as_str) != Some(sub_name) {
            return Err(Error::Precondition(format!("module {name} is not over subalgebra {sub_name}")));
        }
        let cobasis = sub.cobasis();
        let values: Vec<Scalar> = match (self.opts.alpha, self.opts.beta) {
            (None, None) => values.to_vec(),
            (a, b) => {
                if cobasis.len() != 1 {
                    return Err(Error::Precondition("--alpha/--beta need a one-element cobasis".into()));
                }
                vec![Scalar::Digits(vec![a.unwrap_or(0), b.unwrap_or(0)])]
            }
        };
        if values.len() != cobasis.len() {
            return Err(Error::DimensionMismatch(format!("{} cobasis values for a cobasis of size {}", values.len(), cobasis.len())));
        }
        let tower = self.tower(splitting_degree(w)?, name)?;
        let k = tower.ext();
        let lambdas = values
            .iter()
            .map(|s| match scalar(k, s) {
                Ok(a) => Ok(a),
                Err(ParseError::Semantic(e)) => Err(e),
                Err(ParseError::Syntax { message, .. }) => Err(Error::DimensionMismatch(message)),
            })
            .collect::<Result<Vec<_>, _>>()?;
        let cl_w = compute_cluster_in(w, &tower)?;
        let c = extend_cluster(&cl_w, sub, &lambdas)?;
        let ind = induce_in(w, sub, &c, &tower)?;
        let alg = &self.doc.algebra;
        let f = ind.module.field();
        let labels: Vec<String> = ind
            .labels
            .iter()
            .map(|l| {
                let mut factors: Vec<String> = ind
                    .cobasis
                    .iter()
                    .zip(&l.exponents)
                    .filter(|(_, &e)| e > 0)
                    .map(|(&i, &e)| if e == 1 { alg.names()[i].clone() } else { format!("{}^{e}", alg.names()[i]) })
                    .collect();
                factors.push(format!("w{}", l.w_index));
                factors.join("*")
            })
            .collect();
        let cobasis_names: Vec<&str> = cobasis.iter().map(|&i| alg.names()[i].as_str()).collect();
        let mut text = format!(
            "induced module from {name} along {sub_name}, dim {}, cluster over {}\n",
            ind.module.dim(),
            field_name(k)
        );
        for (x, &l) in cobasis_names.iter().zip(&lambdas) {
            let _ = writeln!(text, "  c({x}) = {}", k.format_elem(l));
        }
        cluster_text(&ind.cluster, alg.names(), &mut text, "  ");
        let _ = writeln!(text, "  basis: {}", labels.join(", "));
        let mut action = Vec::new();
        for (x, r) in alg.names().iter().zip(ind.module.action()) {
            let _ = writeln!(text, "  {x}:");
            matrix_text(r, &mut text, "    ");
            action.push(json!({ "element": x, "matrix": matrix_json(r) }));
        }
        let value = json!({
            "task": "induce",
            "module": name,
            "subalgebra": sub_name,
            "cobasis": cobasis_names,
            "cobasis_values": lambdas.iter().map(|&a| scalar_json(k, a)).collect::<Vec<_>>(),
            "splitting_field": field_json(k),
            "cluster": cluster_json(&ind.cluster),
            "dim": ind.module.dim(),
            "labels": labels,
            "field": field_json(f),
            "action": action,
        });
        Ok((value, text))
    }

    fn homcluster(&mut self, source: &str, target: &str) -> Result<(Value, String), Error> {
        let (v, w) = (self.module(source), self.module(target));
        let h = LieModule::hom_module(v, w)?;
        let minimum = [v, w, &h].iter().try_fold(1, |d, m| splitting_degree(m).map(|e| lcm(d, e)))?;
        let tower = self.tower(minimum, &format!("Hom({source}, {target})"))?;
        let ch = compute_cluster_in(&h, &tower)?;
        let diff = compute_cluster_in(v, &tower)?.differences(&compute_cluster_in(w, &tower)?)?;
        let k = tower.ext();
        let mut text = format!("cluster of Hom({source}, {target}) over {}\n", field_name(k));
        cluster_text(&ch, v.algebra().names(), &mut text, "  ");
        let agree = ch == diff;
        let _ = writeln!(text, "  equals the set of differences c2 - c1: {}", if agree { "yes" } else { "no" });
        let value = json!({
            "task": "homcluster",
            "source": source,
            "target": target,
            "dim": h.dim(),
            "splitting_field": field_json(k),
            "cluster": cluster_json(&ch),
            "differences": cluster_json(&diff),
            "agree": agree,
        });
        Ok((value, text))
    }

    fn oracle_compare(&mut self, name: &str) -> Result<(Value, String, bool), Error> {
        let m = self.module(name);
        let cfg = OracleConfig { bound: self.opts.oracle_bound.unwrap_or(oracle::DEFAULT_BOUND), ..OracleConfig::default() };
        let tower = self.tower(splitting_degree(m)?, name)?;
        let ours = compute_cluster_in(m, &tower)?;
        let theirs = oracle::cluster_by_factors_in(m, &tower, &cfg)?;
        let series = oracle::composition_factors(m, &cfg)?;
        let irreducible = series.factors.len() == 1;
        let fast = is_amenable(m)?.is_amenable();
        let slow = oracle::amenable_by_definition(m, &tower, &ours)?;
        let agree = ours == theirs && fast == slow;
        let k = tower.ext();
        let mut text = format!("oracle comparison for {name} over {}\n", field_name(k));
        let _ = writeln!(text, "  eigenspace cluster:");
        cluster_text(&ours, m.algebra().names(), &mut text, "    ");
        let _ = writeln!(text, "  composition-factor cluster:");
        cluster_text(&theirs, m.algebra().names(), &mut text, "    ");
        let _ = writeln!(text, "  composition factor dims over the base field: {:?}", series.dims());
        let _ = writeln!(text, "  irreducible: {irreducible}");
        let _ = writeln!(text, "  amenable (squarefree test / definition): {fast} / {slow}");
        let _ = writeln!(text, "  agree: {agree}");
        let value = json!({
            "task": "oracle-compare",
            "module": name,
            "bound": cfg.bound,
            "splitting_field": field_json(k),
            "eigenspace_cluster": cluster_json(&ours),
            "factor_cluster": cluster_json(&theirs),
            "composition_dims": series.dims(),
            "irreducible": irreducible,
            "amenable_squarefree": fast,
            "amenable_definition": slow,
            "agree": agree,
        });
        Ok((value, text, agree))
    }

    fn check(&mut self) -> Result<(Value, String), Failure> {
        let doc = self.doc;
        let report = doc.algebra.validate();
        if !report.is_valid() {
            let v = report.violations.iter().map(|v| v.to_string()).collect();
            return Err(Failure::Violations("algebra fails the restricted Lie algebra axioms".into(), v));
        }
        let mut text = format!("algebra of dimension {} over {}: valid\n", doc.algebra.dim(), field_name(&doc.field));
        let mut subs = Vec::new();
        for (name, sub) in &doc.subalgebras {
            let chain = clusterkit_core::subnormal_chain(sub)?;
            let _ = writeln!(
                text,
                "  subalgebra {name} {:?}: p-closed {}, subnormal {}",
                sub.indices(),
                sub.is_p_closed(),
                chain.is_some()
            );
            subs.push(json!({
                "name": name,
                "indices": sub.indices(),
                "p_closed": sub.is_p_closed(),
                "subnormal": chain.is_some(),
                "chain_dims": chain.map(|c| c.iter().map(|s| s.dim()).collect::<Vec<_>>()),
            }));
        }
        let mut mods = Vec::new();
        for (name, m) in &doc.modules {
            let over = doc.module_over.get(name);
            let _ = writeln!(
                text,
                "  module {name}: dim {}, over {}, valid",
                m.dim(),
                over.map(String::as_str).unwrap_or("the whole algebra")
            );
            mods.push(json!({ "name": name, "dim": m.dim(), "over": over, "valid": true }));
        }
        let value = json!({ "task": "check", "algebra": { "dim": doc.algebra.dim(), "valid": true }, "subalgebras": subs, "modules": mods });
        Ok((value, text))
    }
}

fn lcm(a: usize, b: usize) -> usize {
    num_integer::lcm(a, b)
}

fn validate_modules(doc: &Document) -> Result<(), Failure> {
    let report = doc.algebra.validate();
    if !report.is_valid() {
        let v = report.violations.iter().map(|v| v.to_string()).collect();
        return Err(Failure::Violations("algebra fails the restricted Lie algebra axioms".into(), v));
    }
    for (name, m) in &doc.modules {
        let report = m.validate();
        if !report.is_valid() {
            let v = report.violations.iter().map(|v| v.to_string()).collect();
            return Err(Failure::Violations(format!("module {name} does not respect brackets"), v));
        }
    }
    Ok(())
}

pub fn run(doc: &Document, command: Command, opts: &Options) -> Result<Report, Failure> {
    validate_modules(doc)?;
    let mut runner = Runner { doc, opts, warnings: Vec::new() };
    let mut results = Vec::new();
    let mut text = String::new();
    let mut disagreement = false;
    if command == Command::Check {
        let (v, t) = runner.check()?;
        results.push(v);
        text.push_str(&t);
    }
    for task in doc.tasks.iter().filter(|t| t.command() == command.name()) {
        let (v, t) = match task {
            Task::Cluster { module } => runner.cluster(module)?,
            Task::Decompose { module, wrt } => {
                let wrt = opts.wrt.as_deref().or(wrt.as_deref());
                if let Some(s) = wrt {
                    if !doc.subalgebras.contains_key(s) {
                        return Err(Failure::Core(Error::DimensionMismatch(format!("unknown subalgebra {s}"))));
                    }
                }
                runner.decompose(module, wrt)?
            }
            Task::Amenable { module } => runner.amenable(module)?,
            Task::Induce { module, subalgebra, cobasis_values } => runner.induce(module, subalgebra, cobasis_values)?,
            Task::Homcluster { source, target } => runner.homcluster(source, target)?,
            Task::OracleCompare { module } => {
                let (v, t, agree) = runner.oracle_compare(module)?;
                disagreement |= !agree;
                (v, t)
            }
        };
        results.push(v);
        text.push_str(&t);
    }
    if results.is_empty() {
        let _ = writeln!(text, "no {} tasks", command.name());
    }
    let json = json!({
        "command": command.name(),
        "field": field_json(&doc.field),
        "warnings": runner.warnings.clone(),
        "results": results,
    });
    let report = Report { json, text, warnings: runner.warnings };
    if disagreement {
        return Err(Failure::Disagreement(report));
    }
    Ok(report)
}
