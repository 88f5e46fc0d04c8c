use anyhow::{bail, Context, Result};
use serde::Serialize;
use serde_json::{json, Value};

use kunneth::complex::{boundary_splitting, matrix_rows, weak_splitting, ComplexDocument, TensorComplex};
use kunneth::random::seeded;
use kunneth::verify::{replay, run_suite, suite, Counterexample, VerificationReport};
use kunneth::{FpChainComplex, FreeChainComplex, Int, KunnethPair, KunnethSplitting};

/// What a command prints, and whether every checked property held.
pub struct Output {
    pub text: String,
    pub json: Value,
    pub ok: bool,
}

fn strs(x: &[Int]) -> Vec<String> {
    x.iter().map(Int::to_string).collect()
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

pub fn homology(c: &FpChainComplex, name: &str) -> Output {
    let mut text = String::new();
    let mut degrees = Vec::new();
    for n in c.degrees() {
        let h = c.homology(n);
        text.push_str(&format!("H_{n} = {}\n", h.group.describe()));
        for (k, z) in h.generator_cycles.iter().enumerate() {
            if k < h.group.canonical_rank() {
                text.push_str(&format!("    generator {}: cycle {:?}\n", k + 1, strs(z)));
            }
        }
        degrees.push(json!({
            "degree": n,
            "group": h.group.describe(),
            "free_rank": h.group.free_rank(),
            "torsion": strs(h.group.torsion_orders()),
            "generators": h.generator_cycles.iter().map(|z| strs(z)).collect::<Vec<_>>(),
        }));
    }
    let summary: Vec<String> = c.degrees().map(|n| format!("H_{n} = {}", c.homology(n).group.describe())).collect();
    let text = format!("{name}: {}\n{text}", summary.join(", "));
    Output {
        text,
        json: json!({ "complex": name, "homology": degrees }),
        ok: true,
    }
}

fn basis_label(prefix: &str, c: &FpChainComplex, n: i64, k: usize) -> String {
    if c.gens(n) == 1 {
        format!("{prefix}{n}")
    } else {
        format!("{prefix}{n}.{}", k + 1)
    }
}

/// `e1⊗f2 + e2⊗f1` style text for a chain of a tensor product.
pub fn tensor_chain_text(t: &TensorComplex, n: i64, x: &[Int]) -> String {
    let mut terms = Vec::new();
    for b in t.blocks(n) {
        for p in 0..b.left_rank {
            for q in 0..b.right_rank {
                let c = &x[b.index(p, q)];
                if *c == Int::from(0) {
                    continue;
                }
                let label = format!(
                    "{}⊗{}",
                    basis_label("e", &t.left, b.i, p),
                    basis_label("f", &t.right, b.j, q)
                );
                let coef = if *c == Int::from(1) {
                    String::new()
                } else if *c == Int::from(-1) {
                    "-".to_string()
                } else {
                    format!("{c}·")
                };
                terms.push(format!("{coef}{label}"));
            }
        }
    }
    if terms.is_empty() {
        return "0".into();
    }
    terms.join(" + ").replace("+ -", "- ")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum SplittingKind {
    Weak,
    Boundary,
}

fn choose_splitting(kind: SplittingKind, c: &FpChainComplex, d: &FpChainComplex, seed: Option<u64>) -> Result<KunnethSplitting> {
    let mut rng = seed.map(seeded);
    Ok(match kind {
        SplittingKind::Weak => {
            let (mut a, mut b) = (weak_splitting(c), weak_splitting(d));
            if let Some(r) = rng.as_mut() {
                a = a.perturbed(r, 3);
                b = b.perturbed(r, 3);
            }
            KunnethSplitting::Weak(a, b)
        }
        SplittingKind::Boundary => {
            let fc = FreeChainComplex::from_fp(c.clone()).context("boundary splittings need free complexes")?;
            let fd = FreeChainComplex::from_fp(d.clone()).context("boundary splittings need free complexes")?;
            let (mut a, mut b) = (boundary_splitting(&fc), boundary_splitting(&fd));
            if let Some(r) = rng.as_mut() {
                a = a.perturbed(r, 3);
                b = b.perturbed(r, 3);
            }
            KunnethSplitting::Boundary(a, b)
        }
    })
}

pub fn kunneth(
    c: &FpChainComplex,
    d: &FpChainComplex,
    names: (&str, &str),
    degree: i64,
    kind: SplittingKind,
    seed: Option<u64>,
) -> Result<Output> {
    let p = KunnethPair::new(c, d).context("Künneth hypothesis violated")?;
    let s = choose_splitting(kind, c, d, seed)?;
    let dec = p.decomposition(degree, Some(&s))?;
    let exact = dec.check();
    let h = p.product().homology(degree).group.clone();
    let mut text = format!("H_{degree}({} ⊗ {}) = {}\n", names.0, names.1, h.describe());
    let mut tensor = Vec::new();
    for (i, j) in p.tensor_pairs(degree) {
        let g = kunneth::abelian::tensor_group(&c.homology(i).group, &d.homology(j).group).group;
        if !g.is_trivial() {
            text.push_str(&format!("  tensor H_{i} ⊗ H_{j} = {}\n", g.describe()));
        }
        tensor.push(json!({ "i": i, "j": j, "group": g.describe() }));
    }
    let mut tor = Vec::new();
    let mut identity = true;
    for (i, j) in p.tor_pairs(degree) {
        let t = p.tor(i, j);
        if !t.group().is_trivial() {
            text.push_str(&format!("  tor Tor(H_{i}, H_{j}) = {}\n", t.group().describe()));
        }
        let mut images = Vec::new();
        for sym in t.symbols() {
            let cycle = p.lambda_cycle(&s, i, &sym.a, &sym.r, j, &sym.b)?;
            let class = p.product().homology(degree).class_of(&cycle.coords)?;
            let back = p.mu(i, j, &class);
            let want = t.reduce(&sym.a, &sym.r, &sym.b)?;
            let ok = t.group().eq_elements(&back, &want);
            identity &= ok;
            let chain = tensor_chain_text(p.tensor(), degree, &cycle.coords);
            text.push_str(&format!(
                "    λ<{:?}, {}, {:?}> = [{chain}]  μλ = id: {ok}\n",
                strs(&sym.a),
                sym.r,
                strs(&sym.b)
            ));
            images.push(json!({
                "a": strs(&sym.a),
                "r": sym.r.to_string(),
                "b": strs(&sym.b),
                "cycle": strs(&cycle.coords),
                "cycle_text": chain,
                "class": strs(&class),
                "mu_lambda_identity": ok,
            }));
        }
        tor.push(json!({ "i": i, "j": j, "group": t.group().describe(), "lambda": images }));
    }
    text.push_str(&format!("  exact: {}\n  μ∘λ = id: {identity}\n", exact.is_ok()));
    let json = json!({
        "left": names.0,
        "right": names.1,
        "degree": degree,
        "splitting": format!("{kind:?}").to_lowercase(),
        "homology": h.describe(),
        "tensor": tensor,
        "tor": tor,
        "exact": exact.is_ok(),
        "mu_lambda_identity": identity,
    });
    Ok(Output {
        text,
        json,
        ok: identity && exact.is_ok(),
    })
}

pub fn split(c: &FpChainComplex, name: &str, seed: Option<u64>) -> Output {
    let mut ws = weak_splitting(c);
    if let Some(s) = seed {
        ws = ws.perturbed(&mut seeded(s), 3);
    }
    let valid = ws.check();
    let mut text = format!("weak splitting of {name}\n");
    let mut degrees = Vec::new();
    for n in c.degrees() {
        let w = ws.degree(n);
        text.push_str(&format!(
            "  degree {n}: rank Ẑ = {}, rank B̂ = {}, ι = {:?}, φ = {:?}, ψ = {:?}\n",
            w.zhat_rank(),
            w.bhat_rank(),
            matrix_rows(&w.iota),
            matrix_rows(&w.phi),
            matrix_rows(&w.psi)
        ));
        degrees.push(json!({
            "degree": n,
            "zhat_rank": w.zhat_rank(),
            "bhat_rank": w.bhat_rank(),
            "iota": matrix_rows(&w.iota),
            "pi": matrix_rows(&w.pi),
            "phi": matrix_rows(&w.phi),
            "psi": matrix_rows(&w.psi),
        }));
    }
    text.push_str(&format!("  valid: {}\n", valid.is_ok()));
    Output {
        text,
        json: json!({ "complex": name, "degrees": degrees, "valid": valid.is_ok() }),
        ok: valid.is_ok(),
    }
}

pub fn gen(c: &FpChainComplex, name: &str) -> Output {
    let doc = ComplexDocument::from_complex(name, c);
    let text = doc.render();
    Output {
        json: to_value(&doc),
        text,
        ok: true,
    }
}

pub fn verify(name: &str, seed: u64, cases: Option<usize>) -> Result<(Output, VerificationReport)> {
    let s = suite(name)?;
    let rep = run_suite(s, seed, cases.unwrap_or(s.default_cases));
    let mut text = rep.summary();
    for c in &rep.counterexamples {
        text.push_str(&format!(
            "  counterexample: case {} {} ({}) {} vs {}\n",
            c.case, c.property, c.context, c.lhs, c.rhs
        ));
    }
    text.push_str(if rep.passed() { "all properties hold\n" } else { "FAILED\n" });
    Ok((
        Output {
            text,
            json: to_value(&rep),
            ok: rep.passed(),
        },
        rep,
    ))
}

/// Accepts a full report or a single counterexample.
pub fn replay_file(text: &str) -> Result<Output> {
    let cases: Vec<Counterexample> = if let Ok(rep) = serde_json::from_str::<VerificationReport>(text) {
        rep.counterexamples
    } else {
        vec![serde_json::from_str::<Counterexample>(text).context("expected a verification report or a counterexample")?]
    };
    if cases.is_empty() {
        bail!("the report has no counterexamples to replay");
    }
    let mut text = String::new();
    let mut results = Vec::new();
    let mut any = false;
    for c in &cases {
        let again = replay(c)?;
        any |= again.is_some();
        text.push_str(&format!(
            "{} case {} {}: {}\n",
            c.suite,
            c.case,
            c.property,
            if again.is_some() { "reproduced" } else { "did not reproduce" }
        ));
        results.push(json!({
            "suite": c.suite,
            "case": c.case,
            "property": c.property,
            "reproduced": again.is_some(),
            "outcome": again.map(|o| to_value(&o)),
        }));
    }
    Ok(Output {
        text,
        json: json!({ "replays": results }),
        ok: !any,
    })
}
