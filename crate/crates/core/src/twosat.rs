use std::fmt::Write as _;

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lit {
    pub var: usize,
    pub positive: bool,
}

impl Lit {
    pub fn pos(var: usize) -> Lit {
        Lit { var, positive: true }
    }
    pub fn neg(var: usize) -> Lit {
        Lit { var, positive: false }
    }
    pub fn negate(self) -> Lit {
        Lit { var: self.var, positive: !self.positive }
    }
    fn node(self) -> usize {
        2 * self.var + usize::from(!self.positive)
    }
    pub fn eval(self, asg: &[bool]) -> bool {
        asg[self.var] == self.positive
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DimacsError {
    #[error("line {0}: {1}")]
    Parse(usize, String),
}

/// Append-only 2-CNF.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TwoSatInstance {
    num_vars: usize,
    clauses: Vec<(Lit, Lit)>,
}

impl TwoSatInstance {
    pub fn new(num_vars: usize) -> Self {
        TwoSatInstance { num_vars, clauses: Vec::new() }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn clauses(&self) -> &[(Lit, Lit)] {
        &self.clauses
    }

    pub fn add_clause(&mut self, a: Lit, b: Lit) {
        assert!(a.var < self.num_vars && b.var < self.num_vars, "literal out of range");
        self.clauses.push((a, b));
    }

    pub fn add_unit(&mut self, a: Lit) {
        self.add_clause(a, a);
    }

    /// Satisfying assignment via the implication graph and Kosaraju's SCCs.
    pub fn solve(&self) -> Option<Vec<bool>> {
        let nodes = 2 * self.num_vars;
        let mut fwd = vec![Vec::new(); nodes];
        let mut rev = vec![Vec::new(); nodes];
        for &(a, b) in &self.clauses {
            // ¬a → b, ¬b → a
            fwd[a.negate().node()].push(b.node());
            fwd[b.negate().node()].push(a.node());
            rev[b.node()].push(a.negate().node());
            rev[a.node()].push(b.negate().node());
        }
        let mut order = Vec::with_capacity(nodes);
        let mut seen = vec![false; nodes];
        for s in 0..nodes {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut stack = vec![(s, 0usize)];
            while let Some((v, i)) = stack.last_mut() {
                if let Some(&w) = fwd[*v].get(*i) {
                    *i += 1;
                    if !seen[w] {
                        seen[w] = true;
                        stack.push((w, 0));
                    }
                } else {
                    order.push(*v);
                    stack.pop();
                }
            }
        }
        // Components come out in topological order of the condensation.
        let mut comp = vec![usize::MAX; nodes];
        let mut next = 0;
        for &s in order.iter().rev() {
            if comp[s] != usize::MAX {
                continue;
            }
            comp[s] = next;
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                for &w in &rev[v] {
                    if comp[w] == usize::MAX {
                        comp[w] = next;
                        stack.push(w);
                    }
                }
            }
            next += 1;
        }
        let mut asg = Vec::with_capacity(self.num_vars);
        for v in 0..self.num_vars {
            let (p, n) = (comp[Lit::pos(v).node()], comp[Lit::neg(v).node()]);
            if p == n {
                return None;
            }
            asg.push(p > n);
        }
        Some(asg)
    }

    pub fn verify(&self, asg: &[bool]) -> bool {
        asg.len() == self.num_vars && self.clauses.iter().all(|&(a, b)| a.eval(asg) || b.eval(asg))
    }

    pub fn to_dimacs(&self) -> String {
        let mut s = format!("p cnf {} {}\n", self.num_vars, self.clauses.len());
        for &(a, b) in &self.clauses {
            writeln!(s, "{} {} 0", dimacs_lit(a), dimacs_lit(b)).unwrap();
        }
        s
    }

    pub fn from_dimacs(text: &str) -> Result<Self, DimacsError> {
        let mut inst: Option<TwoSatInstance> = None;
        for (i, line) in text.lines().enumerate() {
            let toks: Vec<&str> = line.split_whitespace().collect();
            let err = |m: &str| DimacsError::Parse(i + 1, m.to_string());
            match toks.first() {
                None | Some(&"c") => continue,
                Some(&"p") => {
                    if toks.len() != 4 || toks[1] != "cnf" {
                        return Err(err("header must be `p cnf <vars> <clauses>`"));
                    }
                    let n = toks[2].parse().map_err(|_| err("bad variable count"))?;
                    inst = Some(TwoSatInstance::new(n));
                }
                Some(_) => {
                    let inst = inst.as_mut().ok_or_else(|| err("clause before header"))?;
                    let nums: Vec<i64> =
                        toks.iter().map(|t| t.parse::<i64>()).collect::<Result<_, _>>().map_err(|_| err("bad literal"))?;
                    if nums.last() != Some(&0) {
                        return Err(err("clause must end with 0"));
                    }
                    let lits: Vec<Lit> = nums[..nums.len() - 1]
                        .iter()
                        .map(|&x| {
                            let var = x.unsigned_abs() as usize;
                            if x == 0 || var > inst.num_vars {
                                return Err(err("literal out of range"));
                            }
                            Ok(Lit { var: var - 1, positive: x > 0 })
                        })
                        .collect::<Result<_, _>>()?;
                    match lits[..] {
                        [a] => inst.add_unit(a),
                        [a, b] => inst.add_clause(a, b),
                        _ => return Err(err("only clauses of width 1 or 2 are supported")),
                    }
                }
            }
        }
        inst.ok_or(DimacsError::Parse(0, "missing header".into()))
    }
}

fn dimacs_lit(l: Lit) -> i64 {
    let v = l.var as i64 + 1;
    if l.positive {
        v
    } else {
        -v
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn forced_y() {
        let mut i = TwoSatInstance::new(2);
        i.add_clause(Lit::pos(0), Lit::pos(1));
        i.add_clause(Lit::neg(0), Lit::pos(1));
        let a = i.solve().unwrap();
        assert!(a[1] && i.verify(&a));
    }

    #[test]
    fn contradiction() {
        let mut i = TwoSatInstance::new(1);
        i.add_unit(Lit::pos(0));
        i.add_unit(Lit::neg(0));
        assert!(i.solve().is_none());
        assert!(TwoSatInstance::new(0).verify(&[]));
    }

    #[test]
    fn dimacs_round_trip() {
        let mut i = TwoSatInstance::new(3);
        i.add_clause(Lit::pos(0), Lit::neg(2));
        i.add_unit(Lit::neg(1));
        assert_eq!(TwoSatInstance::from_dimacs(&i.to_dimacs()).unwrap(), i);
    }
}
