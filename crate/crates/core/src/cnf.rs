//! Propositional encoding of a [`SearchSpec`] as DIMACS CNF, and decoding
//! of solver models back into tables.
//!
//! Cell `(i, j)` taking value `v` is variable `1 + (i·n + j)·n + v`.
//! Auxiliary variables follow the cell variables; each one is defined by
//! an AND gate over earlier literals.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::capabilities::ClassifierReading;
use crate::error::CnfError;
use crate::search::{FixedRoles, Polarity, Predicate, SearchSpec};
use crate::table::{CayleyTable, Element};

pub type Lit = i32;

/// A CNF formula with the gate definitions of its auxiliary variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CnfDocument {
    pub n: usize,
    pub variable_count: usize,
    pub clauses: Vec<Vec<Lit>>,
    /// `(output, inputs)` of every AND gate, in creation order.
    pub gates: Vec<(Lit, Vec<Lit>)>,
    /// Variable forced true by a unit clause.
    pub true_var: Lit,
    /// `(predicate, polarity, literal)` for every constraint.
    pub constraints: Vec<(Predicate, Polarity, Lit)>,
}

/// Variable of cell `(i, j)` taking value `v` in a size-`n` encoding.
pub fn cell_var(n: usize, i: Element, j: Element, v: Element) -> Lit {
    (1 + (i * n + j) * n + v) as Lit
}

struct Builder {
    n: usize,
    next: Lit,
    clauses: Vec<Vec<Lit>>,
    gates: Vec<(Lit, Vec<Lit>)>,
    memo: HashMap<Vec<Lit>, Lit>,
    t: Lit,
}

impl Builder {
    fn new(n: usize) -> Self {
        let cells = (n * n * n) as Lit;
        let t = cells + 1;
        Builder {
            n,
            next: t + 1,
            clauses: vec![vec![t]],
            gates: Vec::new(),
            memo: HashMap::new(),
            t,
        }
    }

    fn cell(&self, i: Element, j: Element, v: Element) -> Lit {
        cell_var(self.n, i, j, v)
    }

    fn and(&mut self, lits: impl IntoIterator<Item = Lit>) -> Lit {
        let mut ins: Vec<Lit> = Vec::new();
        for l in lits {
            if l == self.t {
                continue;
            }
            if l == -self.t {
                return -self.t;
            }
            ins.push(l);
        }
        ins.sort_unstable_by_key(|l| (l.abs(), *l));
        ins.dedup();
        if ins.windows(2).any(|w| w[0] == -w[1]) {
            return -self.t;
        }
        match ins.len() {
            0 => return self.t,
            1 => return ins[0],
            _ => {}
        }
        if let Some(&g) = self.memo.get(&ins) {
            return g;
        }
        let g = self.next;
        self.next += 1;
        for &l in &ins {
            self.clauses.push(vec![-g, l]);
        }
        let mut long: Vec<Lit> = ins.iter().map(|l| -l).collect();
        long.push(g);
        self.clauses.push(long);
        self.gates.push((g, ins.clone()));
        self.memo.insert(ins, g);
        g
    }

    fn or(&mut self, lits: impl IntoIterator<Item = Lit>) -> Lit {
        let neg: Vec<Lit> = lits.into_iter().map(|l| -l).collect();
        -self.and(neg)
    }

    fn implies(&mut self, premises: &[Lit], conclusion: Lit) -> Lit {
        let lits: Vec<Lit> = premises.iter().map(|l| -l).chain([conclusion]).collect();
        self.or(lits)
    }

    fn absorbing(&mut self, i: Element, j: Element) -> Lit {
        let (a, b) = (self.cell(i, j, 0), self.cell(i, j, 1));
        self.or([a, b])
    }

    /// Cells `(i, j)` and `(k, l)` hold different values.
    fn differ(&mut self, (i, j): (Element, Element), (k, l): (Element, Element)) -> Lit {
        let per_value: Vec<Lit> = (0..self.n)
            .map(|v| {
                let (p, q) = (self.cell(i, j, v), self.cell(k, l, v));
                self.and([p, -q])
            })
            .collect();
        self.or(per_value)
    }

    fn one_hot(&mut self) {
        let n = self.n;
        for i in 0..n {
            for j in 0..n {
                if i < 2 {
                    for v in 0..n {
                        let x = self.cell(i, j, v);
                        self.clauses.push(vec![if v == i { x } else { -x }]);
                    }
                    continue;
                }
                self.clauses.push((0..n).map(|v| self.cell(i, j, v)).collect());
                for v in 0..n {
                    for w in v + 1..n {
                        self.clauses.push(vec![-self.cell(i, j, v), -self.cell(i, j, w)]);
                    }
                }
            }
        }
    }

    fn e2pm(&mut self) -> Lit {
        let n = self.n;
        let mut parts = Vec::new();
        for e in 2..n {
            let lits: Vec<Lit> = (0..n).map(|x| -self.cell(e, x, e)).collect();
            parts.push(self.or(lits));
        }
        for a in 0..n {
            for b in a + 1..n {
                let diffs: Vec<Lit> = (0..n)
                    .map(|j| {
                        let ab = self.differ((a, j), (b, j));
                        let ba = self.differ((b, j), (a, j));
                        self.or([ab, ba])
                    })
                    .collect();
                parts.push(self.or(diffs));
            }
        }
        self.and(parts)
    }

    fn retraction(&mut self, roles: &FixedRoles, mutual: bool) -> Lit {
        let n = self.n;
        let mut options = Vec::new();
        for s in pick(roles.s, n) {
            for r in pick(roles.r, n) {
                let mut parts = vec![self.cell(r, 0, 0)];
                for x in 2..n {
                    for y in 0..n {
                        let (sx, ry) = (self.cell(s, x, y), self.cell(r, y, x));
                        parts.push(self.implies(&[sx], ry));
                        if mutual {
                            let (rx, sy) = (self.cell(r, x, y), self.cell(s, y, x));
                            parts.push(self.implies(&[rx], sy));
                        }
                    }
                }
                options.push(self.and(parts));
            }
        }
        self.or(options)
    }

    fn dichotomy(&mut self, roles: &FixedRoles, reading: ClassifierReading) -> Lit {
        let n = self.n;
        let mut classifier_options = Vec::new();
        for tau in pick(roles.tau, n) {
            let from = match reading {
                ClassifierReading::Strict => 0,
                ClassifierReading::CoreOnly => 2,
            };
            let lits: Vec<Lit> = (from..n).map(|x| self.absorbing(tau, x)).collect();
            classifier_options.push(self.and(lits));
        }
        let exists_classifier = self.or(classifier_options);
        let mut split = Vec::new();
        let mut nonclassifiers = Vec::new();
        for y in 2..n {
            let abs: Vec<Lit> = (2..n).map(|x| self.absorbing(y, x)).collect();
            let is_c = self.and(abs.iter().copied());
            let is_n = self.and(abs.iter().map(|l| -l));
            split.push(self.or([is_c, is_n]));
            nonclassifiers.push(is_n);
        }
        let all_split = self.and(split);
        let some_n = self.or(nonclassifiers);
        self.and([exists_classifier, all_split, some_n])
    }

    fn icp(&mut self, roles: &FixedRoles, distinct: bool, nontrivial: bool) -> Lit {
        let n = self.n;
        let mut options = Vec::new();
        for a in pick(roles.a, n) {
            for b in pick(roles.b, n) {
                for c in pick(roles.c, n) {
                    if distinct && (a == b || b == c || a == c) {
                        continue;
                    }
                    let mut parts = Vec::new();
                    for x in 2..n {
                        let ab = self.absorbing(b, x);
                        parts.push(-ab);
                        for y in 0..n {
                            for v in 0..n {
                                let (bx, cy, ax) = (self.cell(b, x, y), self.cell(c, y, v), self.cell(a, x, v));
                                parts.push(self.implies(&[bx, cy], ax));
                            }
                        }
                    }
                    if nontrivial {
                        let spread: Vec<Lit> = (3..n).map(|x| self.differ((a, 2), (a, x))).collect();
                        parts.push(self.or(spread));
                    }
                    options.push(self.and(parts));
                }
            }
        }
        self.or(options)
    }

    fn associative(&mut self) -> Lit {
        let n = self.n;
        let mut parts = Vec::new();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for u in 0..n {
                        for w in 0..n {
                            for v in 0..n {
                                let pre = [self.cell(a, b, u), self.cell(b, c, w), self.cell(u, c, v)];
                                let post = self.cell(a, w, v);
                                parts.push(self.implies(&pre, post));
                            }
                        }
                    }
                }
            }
        }
        self.and(parts)
    }

    fn right_identity(&mut self) -> Lit {
        let n = self.n;
        let options: Vec<Lit> = (0..n)
            .map(|e| {
                let lits: Vec<Lit> = (0..n).map(|a| self.cell(a, e, a)).collect();
                self.and(lits)
            })
            .collect();
        self.or(options)
    }

    fn commutative(&mut self) -> Lit {
        let n = self.n;
        let mut parts = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                for v in 0..n {
                    let (ab, ba) = (self.cell(a, b, v), self.cell(b, a, v));
                    parts.push(self.implies(&[ab], ba));
                }
            }
        }
        self.and(parts)
    }

    fn k_combinator(&mut self) -> Lit {
        let n = self.n;
        let mut options = Vec::new();
        for k in 0..n {
            let mut parts = Vec::new();
            for a in 0..n {
                for u in 0..n {
                    for b in 0..n {
                        let (ka, ub) = (self.cell(k, a, u), self.cell(u, b, a));
                        parts.push(self.implies(&[ka], ub));
                    }
                }
            }
            options.push(self.and(parts));
        }
        self.or(options)
    }

    fn predicate(&mut self, pred: Predicate, roles: &FixedRoles, reading: ClassifierReading) -> Lit {
        match pred {
            Predicate::E2PM => self.e2pm(),
            Predicate::RMutual => self.retraction(roles, true),
            Predicate::ROneSided => self.retraction(roles, false),
            Predicate::D => self.dichotomy(roles, reading),
            Predicate::H | Predicate::ComposeInert => self.icp(roles, true, true),
            Predicate::WeakIcpNoDistinct => self.icp(roles, false, true),
            Predicate::WeakIcpNoNontrivial => self.icp(roles, true, false),
            Predicate::Associative => self.associative(),
            Predicate::RightIdentity => self.right_identity(),
            Predicate::Commutative => self.commutative(),
            Predicate::KCombinator => self.k_combinator(),
        }
    }
}

fn pick(fixed: Option<Element>, n: usize) -> std::ops::Range<Element> {
    match fixed {
        Some(e) => e..e + 1,
        None => 2..n,
    }
}

/// Encodes `spec` at its size. Absorbers are `0` and `1`.
pub fn encode(spec: &SearchSpec) -> Result<CnfDocument, CnfError> {
    spec.validate().map_err(|e| CnfError::SpecInvalid(e.to_string()))?;
    let n = spec.n;
    let mut b = Builder::new(n);
    b.one_hot();
    let mut constraints = Vec::new();
    for c in &spec.constraints {
        let roles = match c.polarity {
            Polarity::Require => spec.fixed_roles,
            Polarity::Forbid => FixedRoles::default(),
        };
        let lit = b.predicate(c.pred, &roles, spec.classifier_reading);
        b.clauses.push(vec![match c.polarity {
            Polarity::Require => lit,
            Polarity::Forbid => -lit,
        }]);
        constraints.push((c.pred, c.polarity, lit));
    }
    Ok(CnfDocument {
        n,
        variable_count: (b.next - 1) as usize,
        clauses: b.clauses,
        gates: b.gates,
        true_var: b.t,
        constraints,
    })
}

impl CnfDocument {
    /// DIMACS text with a comment header describing the variable map.
    pub fn to_dimacs(&self) -> String {
        let n = self.n;
        let mut out = String::new();
        let _ = writeln!(out, "c e2pm cell encoding, n = {n}, absorbers 0 and 1");
        let _ = writeln!(out, "c cell (i,j) = v  <->  variable 1 + (i*{n} + j)*{n} + v, for i, j, v in 0..{n}");
        let _ = writeln!(out, "c cell variables 1..={}; variable {} is constant true", n * n * n, self.true_var);
        for (pred, pol, lit) in &self.constraints {
            let p = match pol {
                Polarity::Require => "require",
                Polarity::Forbid => "forbid",
            };
            let _ = writeln!(out, "c {p} {pred}: literal {lit}");
        }
        let _ = writeln!(out, "p cnf {} {}", self.variable_count, self.clauses.len());
        for clause in &self.clauses {
            for l in clause {
                let _ = write!(out, "{l} ");
            }
            out.push_str("0\n");
        }
        out
    }

    /// The complete assignment induced by `table`, with every auxiliary
    /// variable set to its gate value. Index `v - 1` holds variable `v`.
    pub fn model_for_table(&self, table: &CayleyTable) -> Vec<Lit> {
        let n = self.n;
        assert_eq!(table.order(), n, "table size differs from the encoding");
        let mut value = vec![false; self.variable_count + 1];
        for i in 0..n {
            for j in 0..n {
                value[cell_var(n, i, j, table.op(i, j)) as usize] = true;
            }
        }
        value[self.true_var as usize] = true;
        let holds = |value: &[bool], l: Lit| value[l.unsigned_abs() as usize] == (l > 0);
        for (g, ins) in &self.gates {
            value[*g as usize] = ins.iter().all(|&l| holds(&value, l));
        }
        (1..=self.variable_count)
            .map(|v| if value[v] { v as Lit } else { -(v as Lit) })
            .collect()
    }

    /// Whether a complete model satisfies every clause.
    pub fn satisfied_by(&self, model: &[Lit]) -> bool {
        let mut value = vec![None; self.variable_count + 1];
        for &l in model {
            if let Some(slot) = value.get_mut(l.unsigned_abs() as usize) {
                *slot = Some(l > 0);
            }
        }
        self.clauses
            .iter()
            .all(|c| c.iter().any(|&l| value[l.unsigned_abs() as usize] == Some(l > 0)))
    }
}

/// Reads the table from a model's cell variables. Variables missing from
/// the model count as false.
pub fn decode(model: &[Lit], n: usize) -> Result<CayleyTable, CnfError> {
    let cells = n * n * n;
    let mut truth = vec![false; cells + 1];
    for &l in model {
        let v = l.unsigned_abs() as usize;
        if l > 0 && v <= cells {
            truth[v] = true;
        }
    }
    let mut entries = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let on: Vec<Element> = (0..n).filter(|&v| truth[cell_var(n, i, j, v) as usize]).collect();
            if on.len() != 1 {
                return Err(CnfError::ModelInconsistent {
                    row: i,
                    col: j,
                    true_count: on.len(),
                });
            }
            entries.push(on[0]);
        }
    }
    Ok(CayleyTable::new(n, entries).expect("decoded entries are in range"))
}

fn parse_lits(line: &str, lno: usize) -> Result<Vec<Lit>, CnfError> {
    line.split_whitespace()
        .map(|tok| {
            tok.parse::<Lit>().map_err(|_| CnfError::Parse {
                line: lno,
                message: format!("expected an integer literal, found {tok:?}"),
            })
        })
        .collect()
}

/// Parses DIMACS CNF into `(variable_count, clauses)`.
pub fn parse_dimacs(text: &str) -> Result<(usize, Vec<Vec<Lit>>), CnfError> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses = Vec::new();
    let mut current = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let lno = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') || line.starts_with('%') {
            continue;
        }
        if let Some(rest) = line.strip_prefix('p') {
            let parts: Vec<&str> = rest.split_whitespace().collect();
            let parsed = match parts.as_slice() {
                ["cnf", v, c] => v.parse().ok().zip(c.parse().ok()),
                _ => None,
            };
            let Some(h) = parsed else {
                return Err(CnfError::Parse {
                    line: lno,
                    message: "malformed problem line".into(),
                });
            };
            if header.replace(h).is_some() {
                return Err(CnfError::Parse {
                    line: lno,
                    message: "duplicate problem line".into(),
                });
            }
            continue;
        }
        let Some((vars, _)) = header else {
            return Err(CnfError::Parse {
                line: lno,
                message: "clause before the problem line".into(),
            });
        };
        for l in parse_lits(line, lno)? {
            if l == 0 {
                clauses.push(std::mem::take(&mut current));
            } else if l.unsigned_abs() as usize > vars {
                return Err(CnfError::Parse {
                    line: lno,
                    message: format!("literal {l} exceeds the declared {vars} variables"),
                });
            } else {
                current.push(l);
            }
        }
    }
    let Some((vars, count)) = header else {
        return Err(CnfError::Parse {
            line: text.lines().count().max(1),
            message: "missing problem line".into(),
        });
    };
    if !current.is_empty() {
        clauses.push(current);
    }
    if clauses.len() != count {
        return Err(CnfError::Parse {
            line: text.lines().count().max(1),
            message: format!("declared {count} clauses, found {}", clauses.len()),
        });
    }
    Ok((vars, clauses))
}

/// Parses solver output: `v` lines or bare lines of signed integers, with
/// `c` and `s` lines ignored and `0` ending the model.
pub fn parse_model(text: &str) -> Result<Vec<Lit>, CnfError> {
    let mut model = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') || line.starts_with('s') {
            continue;
        }
        let body = line.strip_prefix('v').unwrap_or(line);
        for l in parse_lits(body, idx + 1)? {
            if l == 0 {
                return Ok(model);
            }
            model.push(l);
        }
    }
    Ok(model)
}
