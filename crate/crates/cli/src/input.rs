use fusionkit::fusion::Spin;
use fusionkit::{Error, Family, Result, RootSystem, Weight};

/// A weight as typed on the command line: comma-separated Dynkin labels,
/// or `spin=a` for A1 where the label is `2a`.
pub fn parse_weight(rs: &RootSystem, s: &str) -> Result<Weight> {
    let w = match s.strip_prefix("spin=") {
        Some(spin) => {
            if rs.id().family() != Family::A || rs.rank() != 1 {
                return Err(Error::Parse {
                    input: s.to_string(),
                    position: 0,
                    message: format!("spin syntax is only accepted for A1, not {}", rs.id()),
                });
            }
            let spin: Spin = spin.parse().map_err(|e| shift_position(e, s, 5))?;
            Weight::from([i64::from(spin.twice)])
        }
        None => s.parse()?,
    };
    if w.rank() != rs.rank() {
        return Err(Error::RankMismatch {
            expected: rs.rank(),
            found: w.rank(),
        });
    }
    Ok(w)
}

fn shift_position(e: Error, input: &str, by: usize) -> Error {
    match e {
        Error::Parse { position, message, .. } => Error::Parse {
            input: input.to_string(),
            position: position + by,
            message,
        },
        other => other,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use fusionkit::root_system;

    #[test]
    fn labels_and_spins() {
        let a1 = root_system("A1").unwrap();
        assert_eq!(parse_weight(&a1, "3").unwrap(), Weight::from([3]));
        assert_eq!(parse_weight(&a1, "spin=3/2").unwrap(), Weight::from([3]));
        assert_eq!(parse_weight(&a1, "spin=1").unwrap(), Weight::from([2]));
        let a2 = root_system("A2").unwrap();
        assert_eq!(parse_weight(&a2, "3,2").unwrap(), Weight::from([3, 2]));
        assert!(matches!(
            parse_weight(&a2, "3"),
            Err(Error::RankMismatch { expected: 2, found: 1 })
        ));
        assert!(matches!(parse_weight(&a2, "spin=1"), Err(Error::Parse { .. })));
        assert!(matches!(
            parse_weight(&a2, "3,x"),
            Err(Error::Parse { position: 2, .. })
        ));
        assert!(matches!(
            parse_weight(&a1, "spin=x"),
            Err(Error::Parse { position: 5, .. })
        ));
    }
}
