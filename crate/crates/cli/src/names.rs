//! Parsing of zoo target names as they appear on the command line:
//! `K3`, `Dt?t=1/2`, `J(V,f)?d=3`, `J(V,f)super?d0=2&d1=2`, `M(1,1)+`,
//! `Q(2)+`, `osp(1,1)`, `P(2)`, `H3(O)`, `JGamma?n=2`, `F1`, `K10`.

use jord_core::rat::Rat;
use jord_core::zoo::{CompositionKind, ZooSpec};
use std::collections::BTreeMap;

/// Parses the `k=v&k2=v2` query tail.
fn params(query: Option<&str>) -> Result<BTreeMap<&str, &str>, String> {
    let mut out = BTreeMap::new();
    let Some(query) = query else { return Ok(out) };
    for piece in query.split('&') {
        let (k, v) = piece
            .split_once('=')
            .ok_or_else(|| format!("malformed parameter `{piece}` (expected k=v)"))?;
        out.insert(k.trim(), v.trim());
    }
    Ok(out)
}

fn need_usize(p: &BTreeMap<&str, &str>, key: &str) -> Result<usize, String> {
    p.get(key)
        .ok_or_else(|| format!("missing parameter `{key}`"))?
        .parse::<usize>()
        .map_err(|_| format!("parameter `{key}` must be a non-negative integer"))
}

/// Parses a zoo target name into its spec.
pub fn parse_target(name: &str) -> Result<ZooSpec, String> {
    let name = name.trim();
    let (head, query) = match name.split_once('?') {
        Some((h, q)) => (h, Some(q)),
        None => (name, None),
    };
    let p = params(query)?;

    match head {
        "F1" => Ok(ZooSpec::Scalar),
        "K3" => Ok(ZooSpec::KaplanskyK3),
        "K10" => Ok(ZooSpec::KacK10),
        "J(V,f)" => Ok(ZooSpec::BilinearForm {
            d: need_usize(&p, "d")?,
        }),
        "J(V,f)super" => Ok(ZooSpec::SuperBilinearForm {
            d0: need_usize(&p, "d0")?,
            d1: need_usize(&p, "d1")?,
        }),
        "JGamma" => Ok(ZooSpec::JGamma {
            n: need_usize(&p, "n")?,
        }),
        "Dt" => {
            let t = p.get("t").ok_or("missing parameter `t`")?;
            let t = Rat::parse(t).ok_or_else(|| format!("`{t}` is not an exact rational"))?;
            Ok(ZooSpec::Dt { t })
        }
        _ => parse_structured(head),
    }
}

/// `H3(O)`, `M(1,1)+`, `Q(2)+`, `osp(1,1)`, `P(2)`.
fn parse_structured(head: &str) -> Result<ZooSpec, String> {
    if let Some(rest) = head.strip_prefix('H') {
        let (n, kind) = rest
            .split_once('(')
            .and_then(|(n, k)| Some((n, k.strip_suffix(')')?)))
            .ok_or_else(|| format!("cannot parse hermitian target `{head}`"))?;
        let n: usize = n.parse().map_err(|_| format!("bad size in `{head}`"))?;
        let kind = match kind {
            "F" => CompositionKind::GroundField,
            "B" => CompositionKind::SplitBinarion,
            "Q" => CompositionKind::SplitQuaternion,
            "O" => CompositionKind::SplitOctonion,
            other => {
                return Err(format!(
                    "unknown composition algebra `{other}` (use F, B, Q, O)"
                ))
            }
        };
        return Ok(ZooSpec::Hermitian { kind, n });
    }
    if let Some(rest) = head.strip_prefix("M(").and_then(|r| r.strip_suffix(")+")) {
        let (m, n) = rest
            .split_once(',')
            .ok_or_else(|| format!("expected M(m,n)+ in `{head}`"))?;
        return Ok(ZooSpec::FullMatrixSuper {
            m: m.trim().parse().map_err(|_| "bad m".to_string())?,
            n: n.trim().parse().map_err(|_| "bad n".to_string())?,
        });
    }
    if let Some(rest) = head.strip_prefix("Q(").and_then(|r| r.strip_suffix(")+")) {
        return Ok(ZooSpec::QSuper {
            n: rest.trim().parse().map_err(|_| "bad n".to_string())?,
        });
    }
    if let Some(rest) = head.strip_prefix("osp(").and_then(|r| r.strip_suffix(')')) {
        let (n, m) = rest
            .split_once(',')
            .ok_or_else(|| format!("expected osp(n,m) in `{head}`"))?;
        return Ok(ZooSpec::Osp {
            n: n.trim().parse().map_err(|_| "bad n".to_string())?,
            m: m.trim().parse().map_err(|_| "bad m".to_string())?,
        });
    }
    if let Some(rest) = head.strip_prefix("P(").and_then(|r| r.strip_suffix(')')) {
        return Ok(ZooSpec::PSuper {
            n: rest.trim().parse().map_err(|_| "bad n".to_string())?,
        });
    }
    Err(format!("unknown target `{head}`; try `jord list`"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_through_cli_names() {
        let names = [
            "F1",
            "K3",
            "K10",
            "J(V,f)?d=3",
            "J(V,f)super?d0=2&d1=2",
            "JGamma?n=2",
            "Dt?t=1/2",
            "Dt?t=-1",
            "H3(O)",
            "H4(F)",
            "H3(Q)",
            "M(1,2)+",
            "Q(2)+",
            "osp(2,1)",
            "P(2)",
        ];
        for name in names {
            let spec = parse_target(name).unwrap();
            assert_eq!(spec.cli_name(), name, "{name}");
        }
    }

    #[test]
    fn rejects_malformed() {
        assert!(parse_target("H3[O]").is_err());
        assert!(parse_target("Dt").is_err());
        assert!(parse_target("Dt?t=zebra").is_err());
        assert!(parse_target("nonsense").is_err());
        assert!(parse_target("J(V,f)?d=-1").is_err());
    }
}
