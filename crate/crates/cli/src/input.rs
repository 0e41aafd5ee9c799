use std::fs;
use std::ops::RangeInclusive;
use std::path::Path;

use cechtower::abelian::AbelianGroup;
use cechtower::cech::Cochain;
use cechtower::complexes::{catalog, Complex};
use cechtower::exactseq::ShortExactSequence;
use cechtower::io;
use cechtower::towers::{LinkStack, TowerCocycle};
use serde_json::Value;

use crate::CliError;

fn read(path: &str) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Input(format!("cannot read `{path}`: {e}")))
}

fn read_json(path: &str) -> Result<Value, CliError> {
    io::parse(&read(path)?).map_err(|e| CliError::Input(format!("{path}: {e}")))
}

fn in_file<T>(path: &str, r: cechtower::Result<T>) -> Result<T, CliError> {
    r.map_err(|e| CliError::from(e).within(path))
}

/// A file path or `catalog:NAME`.
pub fn complex(arg: &str) -> Result<Complex, CliError> {
    if let Some(name) = arg.strip_prefix("catalog:") {
        return Ok(catalog(name)?);
    }
    let v = read_json(arg)?;
    in_file(arg, io::complex_from_json(&v))
}

/// A file, inline JSON, or shorthand such as `Z/2` or `Z^2+Z/4`.
pub fn group(arg: &str) -> Result<AbelianGroup, CliError> {
    let v = json_or_file(arg)?;
    match v {
        Some((v, origin)) => in_file(&origin, io::group_from_json(&v)),
        None => Ok(io::parse_group_shorthand(arg)?),
    }
}

/// A file, inline JSON array, or comma-separated shorthand such as `Z,Z/2`.
pub fn stack(arg: &str) -> Result<LinkStack, CliError> {
    match json_or_file(arg)? {
        Some((v, origin)) => in_file(&origin, io::stack_from_json(&v)),
        None => {
            let links = arg.split(',').map(io::parse_group_shorthand).collect::<cechtower::Result<Vec<_>>>()?;
            Ok(LinkStack::new(links)?)
        }
    }
}

fn json_or_file(arg: &str) -> Result<Option<(Value, String)>, CliError> {
    let t = arg.trim_start();
    if t.starts_with('{') || t.starts_with('[') {
        let v = io::parse(arg).map_err(|e| CliError::Input(format!("inline JSON: {e}")))?;
        return Ok(Some((v, "inline JSON".into())));
    }
    if Path::new(arg).is_file() {
        return Ok(Some((read_json(arg)?, arg.to_string())));
    }
    Ok(None)
}

pub fn cochain(path: &str, complex: Option<&Complex>) -> Result<Cochain, CliError> {
    let v = read_json(path)?;
    in_file(path, io::cochain_from_json(&v, complex))
}

pub fn tower(path: &str) -> Result<TowerCocycle, CliError> {
    let v = read_json(path)?;
    in_file(path, io::tower_from_json(&v))
}

pub fn ses(path: &str) -> Result<ShortExactSequence, CliError> {
    let v = read_json(path)?;
    in_file(path, io::ses_from_json(&v))
}

/// `k`, `a..b` or `a..=b`; both forms of range include `b`.
pub fn degrees(arg: &str) -> Result<RangeInclusive<usize>, CliError> {
    let bad = || CliError::Input(format!("cannot read `{arg}` as a degree or range a..b"));
    let num = |s: &str| s.trim().parse::<usize>().map_err(|_| bad());
    match arg.split_once("..") {
        None => {
            let k = num(arg)?;
            Ok(k..=k)
        }
        Some((a, b)) => {
            let (a, b) = (num(a)?, num(b.strip_prefix('=').unwrap_or(b))?);
            if a > b {
                return Err(bad());
            }
            Ok(a..=b)
        }
    }
}

/// Comma-separated integers, as in `--class "1,0"`.
pub fn coords(arg: &str) -> Result<Vec<cechtower::Int>, CliError> {
    if arg.trim().is_empty() {
        return Ok(Vec::new());
    }
    arg.split(',')
        .map(|t| t.trim().parse().map_err(|_| CliError::Input(format!("`{t}` is not an integer in `{arg}`"))))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_ranges() {
        assert_eq!(degrees("2").unwrap(), 2..=2);
        assert_eq!(degrees("0..3").unwrap(), 0..=3);
        assert_eq!(degrees("1..=2").unwrap(), 1..=2);
        assert!(degrees("3..1").is_err());
        assert!(degrees("x").is_err());
    }

    #[test]
    fn stacks_from_shorthand() {
        let s = stack("Z,Z/2").unwrap();
        assert_eq!(s.links(), &[AbelianGroup::integers(), AbelianGroup::cyclic(2)]);
        let s = stack(r#"["Z", {"mod": 3}]"#).unwrap();
        assert_eq!(s.top(), &AbelianGroup::cyclic(3));
    }

    #[test]
    fn class_coordinates() {
        assert_eq!(coords("1, -2").unwrap(), vec![1.into(), (-2).into()]);
        assert!(coords("").unwrap().is_empty());
        assert!(coords("a").is_err());
    }
}
