use lsmult::{Error, Result, RootSystem, Weight, Q};

/// Parses `1,0,2` or `eps:1,1/2` into a weight of `rs`.
pub fn weight(rs: &RootSystem, raw: &str) -> Result<Weight> {
    let w = match raw.strip_prefix("eps:") {
        Some(eps) => {
            let coords = eps
                .split(',')
                .map(|t| {
                    t.trim().parse::<Q>().map_err(|_| {
                        Error::input(format!("malformed epsilon weight `{raw}`: `{t}` is not a rational"))
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            rs.weight_from_eps(&coords)?
        }
        None => raw.parse::<Weight>()?,
    };
    rs.check_rank(&w)?;
    Ok(w)
}

pub fn dominant(rs: &RootSystem, raw: &str) -> Result<Weight> {
    let w = weight(rs, raw)?;
    rs.check_dominant(&w)?;
    Ok(w)
}

pub fn dominant_list(rs: &RootSystem, raw: &[String]) -> Result<Vec<Weight>> {
    raw.iter().map(|r| dominant(rs, r)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_both_syntaxes() {
        let b2 = RootSystem::from_label("B2").unwrap();
        assert_eq!(weight(&b2, "1,0").unwrap(), Weight(vec![1, 0]));
        assert_eq!(weight(&b2, "eps:1/2,1/2").unwrap(), Weight(vec![0, 1]));
        assert!(weight(&b2, "1,0,0").unwrap_err().is_input());
        assert!(weight(&b2, "eps:a,1").unwrap_err().is_input());
        assert!(dominant(&b2, "-1,0").unwrap_err().is_input());
    }
}
