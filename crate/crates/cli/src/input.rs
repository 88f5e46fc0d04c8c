use std::io::Read;

use anyhow::{bail, Context, Result};
use kunneth::complex::builtin::{moore, point, rp, sphere};
use kunneth::complex::{mod_reduction, ComplexDocument};
use kunneth::random::{random_free_complex, seeded, ComplexParams};
use kunneth::{FpChainComplex, Int};

pub const BUILTINS: &str = "moore M N | sphere N | rp N | point | random SEED [MAX_DEGREE MAX_RANK MAX_ENTRY], optionally followed by `mod R`";

fn num(words: &[&str], k: usize, what: &str) -> Result<i64> {
    let w = words.get(k).with_context(|| format!("missing {what}"))?;
    w.parse().with_context(|| format!("{what} `{w}` is not an integer"))
}

/// A builtin description, or `None` if the first word is not a builtin.
pub fn builtin(desc: &str) -> Result<Option<FpChainComplex>> {
    let mut words: Vec<&str> = desc.split_whitespace().collect();
    let mut modulus = None;
    if let Some(k) = words.iter().position(|w| *w == "mod") {
        modulus = Some(num(&words, k + 1, "modulus")?);
        if words.len() > k + 2 {
            bail!("unexpected `{}` after the modulus", words[k + 2]);
        }
        words.truncate(k);
    }
    let Some(&head) = words.first() else {
        bail!("empty complex description; expected {BUILTINS} or a file");
    };
    let expect = |n: usize| -> Result<()> {
        if words.len() != n + 1 {
            bail!("`{head}` takes {n} argument(s), got {}", words.len() - 1);
        }
        Ok(())
    };
    let c = match head {
        "moore" => {
            expect(2)?;
            moore(num(&words, 1, "m")?, num(&words, 2, "n")?).into_fp()
        }
        "sphere" => {
            expect(1)?;
            let n = num(&words, 1, "n")?;
            if n < 0 {
                bail!("sphere dimension must be nonnegative");
            }
            sphere(n).into_fp()
        }
        "rp" => {
            expect(1)?;
            let n = num(&words, 1, "n")?;
            if n < 0 {
                bail!("projective space dimension must be nonnegative");
            }
            rp(n).into_fp()
        }
        "point" => {
            expect(0)?;
            point().into_fp()
        }
        "random" => {
            if words.len() != 2 && words.len() != 5 {
                bail!("`random` takes SEED or SEED MAX_DEGREE MAX_RANK MAX_ENTRY");
            }
            let seed = num(&words, 1, "seed")?;
            let p = if words.len() == 5 {
                ComplexParams::new(num(&words, 2, "max degree")?, num(&words, 3, "max rank")? as usize, num(&words, 4, "max entry")?)
            } else {
                ComplexParams::default()
            };
            random_free_complex(&mut seeded(seed as u64), &p).into_fp()
        }
        _ => return Ok(None),
    };
    Ok(Some(match modulus {
        Some(r) => mod_reduction(&c, &Int::from(r))?,
        None => c,
    }))
}

/// A builtin description, a document path, or `-` for a document on stdin.
pub fn load(desc: &str) -> Result<FpChainComplex> {
    if let Some(c) = builtin(desc)? {
        return Ok(c);
    }
    let path = desc.trim();
    let text = if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).context("reading stdin")?;
        s
    } else {
        std::fs::read_to_string(path)
            .with_context(|| format!("`{path}` is neither a builtin ({BUILTINS}) nor a readable file"))?
    };
    let doc = ComplexDocument::parse(&text).with_context(|| format!("in {path}"))?;
    doc.to_complex().with_context(|| format!("in {path}"))
}
