//! Named graph families and their fixed vertex numbering.
//!
//! | spec                  | graph                         | numbering                                   |
//! |-----------------------|-------------------------------|---------------------------------------------|
//! | `path:n`              | `P_n`                         | `i ~ i+1`                                   |
//! | `cycle:n`             | `C_n`, `n >= 3`               | `i ~ i+1`, `n ~ 1`                          |
//! | `complete:n`          | `K_n`                         |                                             |
//! | `null:n`              | `K̄_n`                         |                                             |
//! | `star:n`              | `K_1 ∨ K̄_{n-1}`, `n >= 2`     | center `1`, leaves `2..=n`                  |
//! | `ternary_star:k,n`    | `K_k ∨ K̄_{n-k}`, `1 <= k < n` | clique `1..=k`, independent side after      |
//! | `complete_bipartite:a,b` | `K̄_a ∨ K̄_b`                | sides `1..=a` and `a+1..=a+b`               |
//! | `wheel:n`             | `C_n ∨ K̄_1`, `n >= 3`         | center `1`, rim `2..=n+1` in cyclic order   |
//! | `fan:n,m`             | `P_n ∨ K̄_m`                   | path `1..=n`, apexes `n+1..=n+m`            |
//! | `cone:m,n`            | `C_n ∨ K̄_m`, `n >= 3`         | cycle `1..=n`, apexes `n+1..=n+m`           |
//! | `windmill:k`          | `(k · P_2) ∨ K̄_1`             | center `1`, blade `i` is `{2i, 2i+1}`       |
//! | `join:A+B`            | `A ∨ B`                       | `A` first, then `B` shifted by `|V(A)|`     |
//!
//! Nested joins are written with parentheses: `join:(join:path:2+null:1)+null:2`.
//!
//! For the ternary star the second parameter is the total vertex count `N`; the
//! corresponding closed forms are all stated in terms of `N`.

use std::fmt;
use std::str::FromStr;

use crate::graph::{Graph, GraphError};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Family {
    Path(usize),
    Cycle(usize),
    Complete(usize),
    Null(usize),
    Star(usize),
    TernaryStar { k: usize, n: usize },
    CompleteBipartite(usize, usize),
    Wheel(usize),
    Fan { path: usize, apexes: usize },
    Cone { apexes: usize, cycle: usize },
    Windmill(usize),
    Join(Box<Family>, Box<Family>),
}

fn invalid(msg: impl Into<String>) -> GraphError {
    GraphError::InvalidFamily(msg.into())
}

impl Family {
    pub fn join(a: Family, b: Family) -> Family {
        Family::Join(Box::new(a), Box::new(b))
    }

    /// Total vertex count.
    pub fn vertex_count(&self) -> usize {
        match *self {
            Family::Path(n) | Family::Cycle(n) | Family::Complete(n) | Family::Null(n) => n,
            Family::Star(n) => n,
            Family::TernaryStar { n, .. } => n,
            Family::CompleteBipartite(a, b) => a + b,
            Family::Wheel(n) => n + 1,
            Family::Fan { path, apexes } => path + apexes,
            Family::Cone { apexes, cycle } => apexes + cycle,
            Family::Windmill(k) => 2 * k + 1,
            Family::Join(ref a, ref b) => a.vertex_count() + b.vertex_count(),
        }
    }

    pub fn validate(&self) -> Result<(), GraphError> {
        match *self {
            Family::Path(n) | Family::Complete(n) | Family::Null(n) if n < 1 => {
                Err(invalid(format!("{self} needs at least 1 vertex")))
            }
            Family::Cycle(n) if n < 3 => Err(invalid(format!("cycle needs n >= 3, got {n}"))),
            Family::Star(n) if n < 2 => Err(invalid(format!("star needs n >= 2, got {n}"))),
            Family::TernaryStar { k, n } if k < 1 || k >= n => Err(invalid(format!(
                "ternary_star needs 1 <= k < n, got k={k}, n={n}"
            ))),
            Family::CompleteBipartite(a, b) if a < 1 || b < 1 => {
                Err(invalid("complete_bipartite needs both sides nonempty"))
            }
            Family::Wheel(n) if n < 3 => Err(invalid(format!("wheel needs n >= 3, got {n}"))),
            Family::Fan { path, apexes } if path < 1 || apexes < 1 => {
                Err(invalid("fan needs n >= 1 and m >= 1"))
            }
            Family::Cone { apexes, cycle } if apexes < 1 || cycle < 3 => {
                Err(invalid("cone needs m >= 1 and n >= 3"))
            }
            Family::Windmill(k) if k < 1 => Err(invalid("windmill needs at least one blade")),
            Family::Join(ref a, ref b) => {
                a.validate()?;
                b.validate()
            }
            _ => Ok(()),
        }
    }

    pub fn build(&self) -> Result<Graph, GraphError> {
        self.validate()?;
        match *self {
            Family::Path(n) => Graph::new(n, &(1..n).map(|i| (i, i + 1)).collect::<Vec<_>>()),
            Family::Cycle(n) => {
                let mut edges: Vec<_> = (1..n).map(|i| (i, i + 1)).collect();
                edges.push((n, 1));
                Graph::new(n, &edges)
            }
            Family::Complete(n) => {
                let edges: Vec<_> = (1..=n)
                    .flat_map(|u| (u + 1..=n).map(move |v| (u, v)))
                    .collect();
                Graph::new(n, &edges)
            }
            Family::Null(n) => Graph::new(n, &[]),
            Family::Star(n) => Family::Complete(1)
                .build()?
                .join(&Family::Null(n - 1).build()?),
            Family::TernaryStar { k, n } => Family::Complete(k)
                .build()?
                .join(&Family::Null(n - k).build()?),
            Family::CompleteBipartite(a, b) => {
                Family::Null(a).build()?.join(&Family::Null(b).build()?)
            }
            Family::Wheel(n) => Family::Complete(1)
                .build()?
                .join(&Family::Cycle(n).build()?),
            Family::Fan { path, apexes } => Family::Path(path)
                .build()?
                .join(&Family::Null(apexes).build()?),
            Family::Cone { apexes, cycle } => Family::Cycle(cycle)
                .build()?
                .join(&Family::Null(apexes).build()?),
            Family::Windmill(k) => {
                let p2 = Family::Path(2).build()?;
                let mut blades = p2.clone();
                for _ in 1..k {
                    blades = blades.disjoint_union(&p2)?;
                }
                Family::Complete(1).build()?.join(&blades)
            }
            Family::Join(ref a, ref b) => a.build()?.join(&b.build()?),
        }
    }

    fn parse_params(name: &str, params: &str, count: usize) -> Result<Vec<usize>, GraphError> {
        let values: Vec<usize> = params
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<usize>()
                    .map_err(|_| invalid(format!("bad parameter {p:?} for {name}")))
            })
            .collect::<Result<_, _>>()?;
        if values.len() != count {
            return Err(invalid(format!(
                "{name} takes {count} parameter(s), got {}",
                values.len()
            )));
        }
        Ok(values)
    }
}

/// Splits `A+B` at the first `+` outside parentheses, stripping one level of
/// parentheses from each side.
fn split_join(body: &str) -> Result<(&str, &str), GraphError> {
    let mut depth = 0i32;
    for (i, c) in body.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            '+' if depth == 0 => {
                return Ok((unparen(&body[..i]), unparen(&body[i + 1..])));
            }
            _ => {}
        }
    }
    Err(invalid(format!(
        "join needs two operands separated by '+': {body:?}"
    )))
}

fn unparen(s: &str) -> &str {
    let s = s.trim();
    s.strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .unwrap_or(s)
}

impl FromStr for Family {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, GraphError> {
        let s = s.trim();
        let (name, params) = s
            .split_once(':')
            .ok_or_else(|| invalid(format!("expected name:params, got {s:?}")))?;
        let fam = match name.trim() {
            "join" => {
                let (a, b) = split_join(params)?;
                Family::join(a.parse()?, b.parse()?)
            }
            name => {
                let (arity, ctor): (usize, fn(&[usize]) -> Family) = match name {
                    "path" => (1, |p| Family::Path(p[0])),
                    "cycle" => (1, |p| Family::Cycle(p[0])),
                    "complete" => (1, |p| Family::Complete(p[0])),
                    "null" => (1, |p| Family::Null(p[0])),
                    "star" => (1, |p| Family::Star(p[0])),
                    "ternary_star" => (2, |p| Family::TernaryStar { k: p[0], n: p[1] }),
                    "complete_bipartite" => (2, |p| Family::CompleteBipartite(p[0], p[1])),
                    "wheel" => (1, |p| Family::Wheel(p[0])),
                    "fan" => (2, |p| Family::Fan {
                        path: p[0],
                        apexes: p[1],
                    }),
                    "cone" => (2, |p| Family::Cone {
                        apexes: p[0],
                        cycle: p[1],
                    }),
                    "windmill" => (1, |p| Family::Windmill(p[0])),
                    other => return Err(invalid(format!("unknown family {other:?}"))),
                };
                ctor(&Family::parse_params(name, params, arity)?)
            }
        };
        fam.validate()?;
        Ok(fam)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Path(n) => write!(f, "path:{n}"),
            Family::Cycle(n) => write!(f, "cycle:{n}"),
            Family::Complete(n) => write!(f, "complete:{n}"),
            Family::Null(n) => write!(f, "null:{n}"),
            Family::Star(n) => write!(f, "star:{n}"),
            Family::TernaryStar { k, n } => write!(f, "ternary_star:{k},{n}"),
            Family::CompleteBipartite(a, b) => write!(f, "complete_bipartite:{a},{b}"),
            Family::Wheel(n) => write!(f, "wheel:{n}"),
            Family::Fan { path, apexes } => write!(f, "fan:{path},{apexes}"),
            Family::Cone { apexes, cycle } => write!(f, "cone:{apexes},{cycle}"),
            Family::Windmill(k) => write!(f, "windmill:{k}"),
            Family::Join(a, b) => {
                let wrap = |x: &Family| match x {
                    Family::Join(..) => format!("({x})"),
                    _ => x.to_string(),
                };
                write!(f, "join:{}+{}", wrap(a), wrap(b))
            }
        }
    }
}

/// `build_family` in free-function form.
pub fn build_family(spec: &Family) -> Result<Graph, GraphError> {
    spec.build()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::VertexSet;

    #[test]
    fn star_is_complete_one_join_null() {
        let star = Family::Star(5).build().unwrap();
        assert_eq!(
            star,
            Family::join(Family::Complete(1), Family::Null(4))
                .build()
                .unwrap()
        );
        assert_eq!(star.degree(1), 4);
        for leaf in 2..=5 {
            assert_eq!(star.degree(leaf), 1);
        }
    }

    #[test]
    fn complete_bipartite_three_two() {
        let g = Family::CompleteBipartite(3, 2).build().unwrap();
        for u in 1..=3 {
            for v in 4..=5 {
                assert!(g.has_edge(u, v));
            }
        }
        assert!(!g.has_edge(1, 2) && !g.has_edge(4, 5));
        assert_eq!(g.edge_count(), 6);
    }

    #[test]
    fn cycle_is_two_regular() {
        let g = Family::Cycle(5).build().unwrap();
        assert!((1..=5).all(|v| g.degree(v) == 2));
        assert!(g.has_edge(5, 1));
    }

    #[test]
    fn wheel_and_windmill_numbering() {
        let w = Family::Wheel(5).build().unwrap();
        assert_eq!(w.n(), 6);
        assert_eq!(w.neighbors(1), VertexSet::from([2, 3, 4, 5, 6]));
        assert!(w.has_edge(6, 2));
        let m = Family::Windmill(2).build().unwrap();
        assert_eq!(m.n(), 5);
        assert_eq!(
            m.edges(),
            vec![(1, 2), (1, 3), (1, 4), (1, 5), (2, 3), (4, 5)]
        );
    }

    #[test]
    fn fan_and_cone_numbering() {
        let fan = Family::Fan { path: 3, apexes: 4 }.build().unwrap();
        assert_eq!(fan.n(), 7);
        assert_eq!(fan.edge_count(), 2 + 12);
        assert_eq!(fan.neighbors(4), VertexSet::from([1, 2, 3]));
        let cone = Family::Cone {
            apexes: 2,
            cycle: 3,
        }
        .build()
        .unwrap();
        assert_eq!(cone.neighbors(4), VertexSet::from([1, 2, 3]));
        assert_eq!(cone.neighbors(1), VertexSet::from([2, 3, 4, 5]));
    }

    #[test]
    fn rejects_invalid_parameters() {
        assert!(Family::Cycle(2).build().is_err());
        assert!(Family::Path(0).build().is_err());
        assert!(Family::Windmill(0).build().is_err());
        assert!(Family::TernaryStar { k: 3, n: 3 }.build().is_err());
        assert!("cycle:2".parse::<Family>().is_err());
        assert!("hypercube:3".parse::<Family>().is_err());
        assert!("fan:3".parse::<Family>().is_err());
    }

    #[test]
    fn parses_and_prints_specs() {
        for s in [
            "cycle:5",
            "star:8",
            "ternary_star:3,6",
            "complete_bipartite:3,2",
            "fan:3,4",
            "cone:2,3",
            "windmill:3",
            "join:null:3+path:2",
            "join:(join:path:2+null:1)+null:2",
        ] {
            let fam: Family = s.parse().unwrap();
            assert_eq!(fam.to_string(), s);
            assert_eq!(fam.build().unwrap().n(), fam.vertex_count());
        }
        assert_eq!(
            "join:null:3+path:2".parse::<Family>().unwrap(),
            Family::join(Family::Null(3), Family::Path(2))
        );
    }
}
