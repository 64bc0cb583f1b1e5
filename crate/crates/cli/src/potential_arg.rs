//! Parsing of `--potential` specs of the form
//! `squarewell:R=1,beta=4.4934`, `gaussian:V0=5,R=1`,
//! `exponential:V0=2,R=1`, `yukawa:V0=1,R=1`.

use anyhow::{anyhow, bail, Context};
use erange_core::Potential;
use std::collections::HashMap;

pub fn parse_potential(spec: &str) -> anyhow::Result<Potential> {
    let (kind, rest) = spec
        .split_once(':')
        .ok_or_else(|| anyhow!("potential spec needs the form kind:key=value,... (got `{spec}`)"))?;
    let mut params = HashMap::new();
    for pair in rest.split(',') {
        let (key, value) = pair
            .split_once('=')
            .ok_or_else(|| anyhow!("bad parameter `{pair}` in potential spec `{spec}`"))?;
        let value: f64 = value
            .trim()
            .parse()
            .with_context(|| format!("parameter `{key}` in `{spec}` is not a number"))?;
        params.insert(key.trim().to_string(), value);
    }
    let mut take = |key: &str| {
        params
            .remove(key)
            .ok_or_else(|| anyhow!("potential spec `{spec}` is missing `{key}`"))
    };
    let pot = match kind.trim().to_ascii_lowercase().as_str() {
        "squarewell" => Potential::square_well(take("R")?, take("beta")?)?,
        "gaussian" => {
            let v0 = take("V0")?;
            Potential::gaussian(v0, take("R")?)?
        }
        "exponential" => {
            let v0 = take("V0")?;
            Potential::exponential(v0, take("R")?)?
        }
        "yukawa" => {
            let v0 = take("V0")?;
            Potential::yukawa(v0, take("R")?)?
        }
        other => bail!("unknown potential kind `{other}` (expected squarewell, gaussian, exponential, yukawa)"),
    };
    if !params.is_empty() {
        let extra: Vec<_> = params.keys().cloned().collect();
        bail!("unused parameters {extra:?} in potential spec `{spec}`");
    }
    Ok(pot)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_the_documented_forms() {
        assert!(matches!(
            parse_potential("squarewell:R=1,beta=4.4934").unwrap(),
            Potential::SquareWell { .. }
        ));
        assert!(matches!(
            parse_potential("gaussian:V0=5,R=1").unwrap(),
            Potential::Gaussian { .. }
        ));
        assert!(matches!(
            parse_potential("exponential:V0=2,R=1").unwrap(),
            Potential::Exponential { .. }
        ));
        assert!(matches!(
            parse_potential("yukawa:V0=1,R=0.5").unwrap(),
            Potential::Yukawa { .. }
        ));
    }

    #[test]
    fn rejects_malformed_specs() {
        assert!(parse_potential("squarewell").is_err());
        assert!(parse_potential("squarewell:R=1").is_err());
        assert!(parse_potential("squarewell:R=1,beta=x").is_err());
        assert!(parse_potential("squarewell:R=1,beta=2,extra=3").is_err());
        assert!(parse_potential("woods-saxon:R=1").is_err());
        assert!(parse_potential("squarewell:R=-1,beta=2").is_err());
    }
}
