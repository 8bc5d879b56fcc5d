//! Plain-text map-spec format, one branch per line, so the CLI can dump
//! presets and load custom systems.
//!
//! ```text
//! map hc3d axes X,Y,Z
//! A | [0,1/3) [0,1] [0,1] | (0,3) (0,2/3) (0,1/2)
//! ...
//! ```

use crate::error::{Error, Result};
use crate::exact::{Axis, HalfOpenInterval, ProductBox};
use crate::maps::affine::AffinePair;
use crate::maps::system::{MapSystem, SymbolBranch};

pub fn dump(system: &MapSystem) -> String {
    let axes: Vec<String> = system.axes().iter().map(|a| a.to_string()).collect();
    let mut out = format!("map {} axes {}", system.name(), axes.join(","));
    if let Some(k) = system.param_k() {
        out.push_str(&format!(" k {k}"));
    }
    out.push('\n');
    for b in system.branches() {
        let domain: Vec<String> = b.domain.intervals().iter().map(|iv| iv.to_string()).collect();
        let action: Vec<String> = b.action.iter().map(|p| p.to_string()).collect();
        out.push_str(&format!("{} | {} | {}\n", b.label, domain.join(" "), action.join(" ")));
    }
    out
}

pub fn parse(text: &str) -> Result<MapSystem> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = lines
        .next()
        .ok_or_else(|| Error::Parse("empty map spec".into()))?;
    let mut tokens = header.split_whitespace();
    if tokens.next() != Some("map") {
        return Err(Error::Parse("map spec must start with `map <name> axes <...>`".into()));
    }
    let name = tokens
        .next()
        .ok_or_else(|| Error::Parse("missing map name".into()))?
        .to_string();
    let mut axes = None;
    let mut param_k = None;
    while let Some(tok) = tokens.next() {
        match tok {
            "axes" => {
                let spec = tokens
                    .next()
                    .ok_or_else(|| Error::Parse("missing axis list".into()))?;
                let parsed: Result<Vec<Axis>> = spec
                    .split(',')
                    .map(|a| match a.trim() {
                        "X" => Ok(Axis::X),
                        "Y" => Ok(Axis::Y),
                        "Z" => Ok(Axis::Z),
                        other => Err(Error::Parse(format!("unknown axis `{other}`"))),
                    })
                    .collect();
                axes = Some(parsed?);
            }
            "k" => {
                let v = tokens
                    .next()
                    .ok_or_else(|| Error::Parse("missing k value".into()))?;
                param_k = Some(v.parse().map_err(|_| Error::Parse(format!("bad k `{v}`")))?);
            }
            other => return Err(Error::Parse(format!("unknown header token `{other}`"))),
        }
    }
    let axes = axes.ok_or_else(|| Error::Parse("missing `axes` in header".into()))?;

    let mut branches = Vec::new();
    for line in lines {
        let mut parts = line.split('|');
        let label = parts
            .next()
            .ok_or_else(|| Error::Parse(format!("bad branch line `{line}`")))?
            .trim()
            .to_string();
        let domain_part = parts
            .next()
            .ok_or_else(|| Error::Parse(format!("branch `{label}`: missing domain")))?;
        let action_part = parts
            .next()
            .ok_or_else(|| Error::Parse(format!("branch `{label}`: missing action")))?;
        if parts.next().is_some() {
            return Err(Error::Parse(format!("branch `{label}`: too many fields")));
        }
        let intervals: Result<Vec<HalfOpenInterval>> =
            domain_part.split_whitespace().map(str::parse).collect();
        let pairs: Result<Vec<AffinePair>> =
            action_part.split_whitespace().map(str::parse).collect();
        branches.push(SymbolBranch {
            label,
            domain: ProductBox::new(axes.clone(), intervals?)?,
            action: pairs?,
        });
    }
    MapSystem::new(name, axes, branches, param_k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maps::presets::preset;

    #[test]
    fn dump_parse_round_trip_for_every_preset() {
        for name in ["baker2d", "baker3d", "hc2d", "hc3d", "hc2d-k(4)", "hc3d-k(5)"] {
            let m = preset(name).unwrap();
            let text = dump(&m);
            let back = parse(&text).unwrap();
            assert_eq!(m, back, "{name}");
        }
    }

    #[test]
    fn malformed_specs_are_rejected() {
        assert!(parse("").is_err());
        assert!(parse("map x\nA | [0,1] | (0,2)").is_err()); // missing axes
        let bad_interval = "map m axes X,Z\nA | [0,1/2] [0,1] | (0,2) (0,1/2)";
        assert!(parse(bad_interval).is_err()); // closed top below 1
    }
}
