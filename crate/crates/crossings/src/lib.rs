//! Component graphs for the special fiber of a stratified level tower.
//!
//! A [`ComponentGraph`] records the irreducible components of a mod-p
//! fiber as nodes, each carrying its multiplicity data — a length (the
//! thickness along the component) and a reduced degree (the rank its
//! reduced scheme contributes) — together with the members that stratify
//! it and annotations for where components cross.
//!
//! Two families are built here:
//!
//! * the level-tower family ([`build_h1_graph`]) whose nodes Z_b^r are
//!   indexed by a zone exponent b and a prime-to-p divisor r, and
//! * the isogyny-class family ([`build_h_graph`]) whose nodes are the λ
//!   classes of the level-p lattice, with the table of lengths and
//!   degrees known in closed form at exponent one.
//!
//! The decisive bookkeeping identity, checked by [`consistency_check`]
//! and frozen in the tests, is that summing length × reduced degree over
//! all nodes recovers the rank of the ambient torsion pair:
//! p^{2n}·(N′)² for the tower family and p⁴ for the class family.

pub mod emit;

pub use emit::{emit_dot, emit_json};

use groupscheme_calc::{GroupSchemeError, h1_decomposition, y1_stratum_rank};
use level_lattice::arith::{divisors, euler_phi, is_prime, pow_u64, psi_index};
use level_lattice::{LatticeError, lambda_classes};
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CrossingsError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("level {n} is not divisible by the characteristic {p}")]
    LevelNotDivisible { n: u64, p: u64 },
    #[error("level must be positive")]
    ZeroLevel,
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    GroupScheme(#[from] GroupSchemeError),
}

/// What the graph describes: the level, the residue characteristic, and
/// whether boundary data is attached.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct GraphContext {
    pub level: u64,
    pub p: u64,
    pub compactified: bool,
}

/// One stratum inside a component.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Member {
    pub id: String,
    pub length: u64,
    pub rank: u64,
}

/// One irreducible component of the special fiber.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Node {
    pub id: String,
    pub members: Vec<Member>,
    /// Thickness along the component; `None` when not tabulated.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub length: Option<u64>,
    /// Rank of the reduced component; `None` when not tabulated.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reduced_degree: Option<u64>,
    pub notes: String,
}

/// An incidence between two components.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Crossing {
    pub pair: [String; 2],
    pub note: String,
}

/// The assembled component graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ComponentGraph {
    pub family: String,
    pub context: GraphContext,
    pub nodes: Vec<Node>,
    pub crossings: Vec<Crossing>,
}

/// Builds the tower-family graph at level N = p^v·N′ (p must divide N).
///
/// Nodes Z_b^r are indexed by the zone exponent 0 ≤ b ≤ v and each
/// divisor r | N′. Node Z_b^r has length p^(v−b), reduced degree
/// φ(r)ψ(r)·φ(p^b)·p^b, and one member per tower level b ≤ m ≤ v with
/// length φ(p^(m−b)). The `compactified` flag only decorates notes — the
/// numerical data describes the open part either way.
pub fn build_h1_graph(n: u64, p: u64, compactified: bool) -> Result<ComponentGraph, CrossingsError> {
    if n == 0 {
        return Err(CrossingsError::ZeroLevel);
    }
    if !is_prime(p) {
        return Err(CrossingsError::NotPrime(p));
    }
    if n % p != 0 {
        return Err(CrossingsError::LevelNotDivisible { n, p });
    }
    let mut n_prime = n;
    let mut v = 0u32;
    while n_prime % p == 0 {
        n_prime /= p;
        v += 1;
    }
    let pv = pow_u64(p, v);
    level_lattice::desk::check_scale("p-part of the level", pv, level_lattice::desk::max_rank())?;

    let mut nodes = Vec::new();
    for b in 0..=v {
        for r in divisors(n_prime) {
            let prime_to_p = euler_phi(r) * psi_index(r);
            let degree = prime_to_p * euler_phi(pow_u64(p, b)) * pow_u64(p, b);
            let members: Vec<Member> = (b..=v)
                .map(|m| {
                    let a = m - b;
                    Member {
                        id: format!("m={m}:({a},{b})"),
                        length: euler_phi(pow_u64(p, a)),
                        rank: prime_to_p * y1_stratum_rank(p, a, b),
                    }
                })
                .collect();
            let boundary = if compactified {
                "; boundary sides attached"
            } else {
                ""
            };
            nodes.push(Node {
                id: format!("Z[b={b}][r={r}]"),
                members,
                length: Some(pow_u64(p, v - b)),
                reduced_degree: Some(degree),
                notes: format!(
                    "tower zone b={b}, prime-to-p divisor r={r}{boundary}"
                ),
            });
        }
    }

    let mut crossings = Vec::new();
    for r in divisors(n_prime) {
        for b in 0..v {
            crossings.push(Crossing {
                pair: [
                    format!("Z[b={b}][r={r}]"),
                    format!("Z[b={}][r={r}]", b + 1),
                ],
                note: format!("adjacent zones at r={r}"),
            });
        }
    }

    Ok(ComponentGraph {
        family: "h1".into(),
        context: GraphContext { level: n, p, compactified },
        nodes,
        crossings,
    })
}

/// Builds the class-family graph at level p, where the table of lengths
/// and degrees is known in closed form: the class of the full lattice has
/// length p² and degree 1, and each of the p + 1 remaining classes has
/// length p and degree p² − p.
///
/// Higher exponents are out of tabulated range for this family — the
/// class enumeration itself lives in the lattice crate.
pub fn build_h_graph(p: u64) -> Result<ComponentGraph, CrossingsError> {
    if !is_prime(p) {
        return Err(CrossingsError::NotPrime(p));
    }
    let classes = lambda_classes(p, 1)?;
    let ambient = p * p; // |G| for n = 1
    let mut nodes = Vec::new();
    for class in &classes {
        let preimage = class.members()[0].h.preimage();
        let quotient = ambient / preimage.order();
        let degree = euler_phi(quotient) * quotient;
        let members: Vec<Member> = class
            .members()
            .iter()
            .map(|member| {
                let (a, c, d) = member.k.hnf_triple();
                let length = euler_phi(member.h.order());
                Member {
                    id: format!("(K[{a},{c},{d}], {})", member.h.id()),
                    length,
                    rank: degree * length,
                }
            })
            .collect();
        let length = members.iter().map(|m| m.length).sum::<u64>();
        nodes.push(Node {
            id: class.id().to_string(),
            members,
            length: Some(length),
            reduced_degree: Some(degree),
            notes: format!("class of the sublattice with preimage {}", preimage_id(preimage)),
        });
    }

    // Every secondary class meets the class of the full lattice.
    let crossings = classes
        .iter()
        .skip(1)
        .map(|class| Crossing {
            pair: ["lambda[0]".into(), class.id().to_string()],
            note: "meets the full-lattice class".into(),
        })
        .collect();

    Ok(ComponentGraph {
        family: "h".into(),
        context: GraphContext { level: p, p, compactified: false },
        nodes,
        crossings,
    })
}

fn preimage_id(preimage: &level_lattice::Subgroup) -> String {
    let (a, c, d) = preimage.hnf_triple();
    format!("M[{a},{c},{d}]")
}

/// One named identity check and its outcome.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// Everything [`consistency_check`] verified, in order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ConsistencyReport {
    pub checks: Vec<CheckResult>,
}

impl ConsistencyReport {
    pub fn is_ok(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failed_names(&self) -> Vec<&str> {
        self.checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| c.name.as_str())
            .collect()
    }
}

/// Verifies the bookkeeping identities a component graph must satisfy.
/// Every check is named so a failure points at the identity it broke; an
/// empty graph passes vacuously.
pub fn consistency_check(graph: &ComponentGraph) -> ConsistencyReport {
    let mut checks = Vec::new();

    // Each tabulated node's length is the sum of its member lengths.
    let mut bad_lengths = Vec::new();
    for node in &graph.nodes {
        if let Some(length) = node.length {
            let sum: u64 = node.members.iter().map(|m| m.length).sum();
            if sum != length {
                bad_lengths.push(format!("{}: {} ≠ {}", node.id, sum, length));
            }
        }
    }
    checks.push(CheckResult {
        name: "node-length-is-member-sum".into(),
        passed: bad_lengths.is_empty(),
        detail: bad_lengths.join("; "),
    });

    // Member ranks factor as reduced degree × member length.
    let mut bad_ranks = Vec::new();
    for node in &graph.nodes {
        if let Some(degree) = node.reduced_degree {
            for member in &node.members {
                if member.rank != degree * member.length {
                    bad_ranks.push(format!("{}/{}", node.id, member.id));
                }
            }
        }
    }
    checks.push(CheckResult {
        name: "member-rank-is-degree-times-length".into(),
        passed: bad_ranks.is_empty(),
        detail: bad_ranks.join("; "),
    });

    // Summing length × degree over all nodes recovers the ambient rank.
    if !graph.nodes.is_empty()
        && graph.nodes.iter().all(|n| n.length.is_some() && n.reduced_degree.is_some())
    {
        let total: u64 = graph
            .nodes
            .iter()
            .map(|n| n.length.unwrap() * n.reduced_degree.unwrap())
            .sum();
        let expected = match graph.family.as_str() {
            "h1" => {
                let p = graph.context.p;
                let v = p_power_exponent_of(graph.context.level, p);
                let n_prime = graph.context.level / pow_u64(p, v);
                pow_u64(p, 2 * v) * n_prime * n_prime
            }
            "h" => pow_u64(graph.context.p, 4),
            _ => total, // unknown family: nothing to pin the total against
        };
        checks.push(CheckResult {
            name: "total-is-ambient-rank".into(),
            passed: total == expected,
            detail: format!("Σ length·degree = {total}, ambient = {expected}"),
        });
    }

    // Crossing endpoints must reference real nodes, never a node itself.
    let ids: std::collections::BTreeSet<&str> =
        graph.nodes.iter().map(|n| n.id.as_str()).collect();
    let mut bad_crossings = Vec::new();
    for crossing in &graph.crossings {
        let [left, right] = &crossing.pair;
        if !ids.contains(left.as_str()) || !ids.contains(right.as_str()) || left == right {
            bad_crossings.push(format!("{left} -- {right}"));
        }
    }
    checks.push(CheckResult {
        name: "crossing-endpoints-exist".into(),
        passed: bad_crossings.is_empty(),
        detail: bad_crossings.join("; "),
    });

    // Tower graphs must agree with the zone engine stratum by stratum.
    if graph.family == "h1" && !graph.nodes.is_empty() {
        checks.push(zone_engine_check(graph));
    }

    ConsistencyReport { checks }
}

fn p_power_exponent_of(n: u64, p: u64) -> u32 {
    let mut rest = n;
    let mut v = 0;
    while rest % p == 0 {
        rest /= p;
        v += 1;
    }
    v
}

/// The r = 1 nodes of a tower graph must reproduce the zone decomposition
/// of the rank engine: same stratum ids, same ranks.
fn zone_engine_check(graph: &ComponentGraph) -> CheckResult {
    let p = graph.context.p;
    let v = p_power_exponent_of(graph.context.level, p);
    let decomposition = match h1_decomposition(p, v) {
        Ok(d) => d,
        Err(err) => {
            return CheckResult {
                name: "zones-match-rank-engine".into(),
                passed: false,
                detail: format!("rank engine refused: {err}"),
            };
        }
    };
    let mut problems = Vec::new();
    for zone in &decomposition.zones {
        let id = format!("Z[b={}][r=1]", zone.b);
        let Some(node) = graph.nodes.iter().find(|n| n.id == id) else {
            problems.push(format!("missing node {id}"));
            continue;
        };
        for stratum in &zone.strata {
            let Some(member) = node.members.iter().find(|m| m.id == stratum.id) else {
                problems.push(format!("{id}: missing member {}", stratum.id));
                continue;
            };
            if member.rank != stratum.rank {
                problems.push(format!(
                    "{id}/{}: rank {} ≠ engine {}",
                    stratum.id, member.rank, stratum.rank
                ));
            }
        }
    }
    CheckResult {
        name: "zones-match-rank-engine".into(),
        passed: problems.is_empty(),
        detail: problems.join("; "),
    }
}
