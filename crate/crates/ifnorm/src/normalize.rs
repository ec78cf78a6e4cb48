//! The normalization algorithms and the normal-form predicate.
//!
//! Three algorithms compute the same normal form:
//!
//! * [`norm`] rewrites tested `If`s in place and recurses; termination is not
//!   structural, so it runs on fuel and reports exhaustion as a value.
//! * [`norm1`] delegates to [`normif`], which is structurally recursive in its
//!   first argument and therefore total; neither takes fuel.
//! * [`norm2`] replaces `norm`'s tested-`If` step with nested recursive calls;
//!   like `norm` it runs on fuel.
//!
//! `norm` and `norm2` are interpreted by an explicit work stack, so call
//! depths far beyond the machine stack are fine; behavior is identical to the
//! naive recursion, including the order in which call edges are recorded.

use serde::Serialize;

use crate::expr::Expr;
use crate::measures::norm_measure;

/// Which equation produced a recursive-call edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum RuleTag {
    /// Atom base case. Makes no recursive call, so it never appears in a trace.
    #[serde(rename = "AT")]
    At,
    /// Atom-tested `If`: the call on the then-branch.
    #[serde(rename = "IF_AT_LEFT")]
    IfAtLeft,
    /// Atom-tested `If`: the call on the else-branch.
    #[serde(rename = "IF_AT_RIGHT")]
    IfAtRight,
    /// `norm`'s single call on the rewritten tested `If`.
    #[serde(rename = "IF_IF")]
    IfIf,
    /// `norm2`'s inner call on `If(v, y, z)`.
    #[serde(rename = "IF_IF_INNER_V")]
    IfIfInnerV,
    /// `norm2`'s inner call on `If(w, y, z)`.
    #[serde(rename = "IF_IF_INNER_W")]
    IfIfInnerW,
    /// `norm2`'s outer call on `If(u, v', w')` built from the inner results.
    #[serde(rename = "IF_IF_OUTER")]
    IfIfOuter,
}

impl RuleTag {
    pub fn name(self) -> &'static str {
        match self {
            RuleTag::At => "AT",
            RuleTag::IfAtLeft => "IF_AT_LEFT",
            RuleTag::IfAtRight => "IF_AT_RIGHT",
            RuleTag::IfIf => "IF_IF",
            RuleTag::IfIfInnerV => "IF_IF_INNER_V",
            RuleTag::IfIfInnerW => "IF_IF_INNER_W",
            RuleTag::IfIfOuter => "IF_IF_OUTER",
        }
    }
}

/// One recursive-call edge recorded during evaluation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CallEdge {
    pub caller: Expr,
    pub callee: Expr,
    pub rule: RuleTag,
    /// Recursion depth of the caller; the outermost invocation is at 0.
    pub depth: u64,
    /// 0-based emission order.
    pub seq: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NormStatus {
    Completed(Expr),
    FuelExhausted,
}

/// Result of a fueled normalization run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormOutcome {
    pub status: NormStatus,
    /// Every invocation, including the outermost.
    pub call_count: u64,
    /// Deepest recursion depth reached (0 for a single call).
    pub max_depth: u64,
    /// Present only when tracing was requested; partial on fuel exhaustion.
    pub trace: Option<Vec<CallEdge>>,
}

impl NormOutcome {
    pub fn completed(&self) -> bool {
        matches!(self.status, NormStatus::Completed(_))
    }

    pub fn result(&self) -> Option<&Expr> {
        match &self.status {
            NormStatus::Completed(e) => Some(e),
            NormStatus::FuelExhausted => None,
        }
    }

    pub fn into_result(self) -> Option<Expr> {
        match self.status {
            NormStatus::Completed(e) => Some(e),
            NormStatus::FuelExhausted => None,
        }
    }
}

/// Fuel sufficient for `norm` on `e`: the measure, saturated to `u64`.
pub fn norm_fuel(e: &Expr) -> u64 {
    u64::try_from(norm_measure(e)).unwrap_or(u64::MAX)
}

/// Default fuel for `norm2`, which has no known call-count bound.
pub const DEFAULT_NORM2_FUEL: u64 = 1_000_000;

/// Normalize by rewriting tested `If`s:
///
/// * `Atom(a)` is returned unchanged;
/// * `If(Atom(a), y, z)` recurses into both branches;
/// * `If(If(u, v, w), y, z)` recurses once on `If(u, If(v, y, z), If(w, y, z))`.
///
/// Each invocation consumes one unit of fuel.
pub fn norm(e: &Expr, fuel: u64, tracing: bool) -> NormOutcome {
    run(Algo::Flat, clone_iterative(e), fuel, tracing)
}

/// Normalize with nested recursion: the tested-`If` case becomes
/// `norm2(If(u, norm2(If(v, y, z)), norm2(If(w, y, z))))`.
pub fn norm2(e: &Expr, fuel: u64, tracing: bool) -> NormOutcome {
    run(Algo::Nested, clone_iterative(e), fuel, tracing)
}

// The derived Clone recurses on tree depth; the machines take their working
// copy through an explicit stack instead, so their no-overflow guarantee
// covers the entry clone too.
fn clone_iterative(e: &Expr) -> Expr {
    enum Task<'a> {
        Visit(&'a Expr),
        Assemble,
    }
    let mut tasks = vec![Task::Visit(e)];
    let mut built: Vec<Expr> = Vec::new();
    while let Some(task) = tasks.pop() {
        match task {
            Task::Visit(Expr::Atom(sym)) => built.push(Expr::Atom(sym.clone())),
            Task::Visit(Expr::If(x, y, z)) => {
                tasks.push(Task::Assemble);
                tasks.push(Task::Visit(z));
                tasks.push(Task::Visit(y));
                tasks.push(Task::Visit(x));
            }
            Task::Assemble => {
                let z = built.pop().expect("assemble follows three visits");
                let y = built.pop().expect("assemble follows three visits");
                let x = built.pop().expect("assemble follows three visits");
                built.push(Expr::ite(x, y, z));
            }
        }
    }
    built.pop().expect("one root remains")
}

/// `normif(x, y, z)` builds the normal form of `If(x, y, z)` assuming `y` and
/// `z` are already normal. Structurally recursive in `x`, hence total:
///
/// * `normif(Atom(a), y, z) = If(Atom(a), y, z)`
/// * `normif(If(u, v, w), y, z) = normif(u, normif(v, y, z), normif(w, y, z))`
pub fn normif(x: Expr, y: Expr, z: Expr) -> Expr {
    enum Frame {
        // evaluating normif(v, y, z); normif(w, y, z) pending
        SecondInner { u: Expr, w: Expr, y: Expr, z: Expr },
        // evaluating normif(w, y, z); outer normif(u, ..) pending
        Outer { u: Expr, first: Expr },
    }

    let mut stack: Vec<Frame> = Vec::new();
    let mut call = Some((x, y, z));
    let mut result: Option<Expr> = None;
    loop {
        if let Some((x, y, z)) = call.take() {
            match x {
                Expr::Atom(_) => result = Some(Expr::ite(x, y, z)),
                Expr::If(u, v, w) => {
                    stack.push(Frame::SecondInner {
                        u: *u,
                        w: *w,
                        y: y.clone(),
                        z: z.clone(),
                    });
                    call = Some((*v, y, z));
                }
            }
        } else {
            let value = result.take().expect("one of call/result is always set");
            match stack.pop() {
                None => return value,
                Some(Frame::SecondInner { u, w, y, z }) => {
                    stack.push(Frame::Outer { u, first: value });
                    call = Some((w, y, z));
                }
                Some(Frame::Outer { u, first }) => {
                    call = Some((u, first, value));
                }
            }
        }
    }
}

/// Total normalizer: `norm1(If(x, y, z)) = normif(x, norm1(y), norm1(z))`.
pub fn norm1(e: &Expr) -> Expr {
    enum Frame {
        ThenSlot { test: Expr, else_branch: Expr },
        ElseSlot { test: Expr, then_result: Expr },
    }

    let mut stack: Vec<Frame> = Vec::new();
    let mut call = Some(clone_iterative(e));
    let mut result: Option<Expr> = None;
    loop {
        if let Some(expr) = call.take() {
            match expr {
                Expr::Atom(_) => result = Some(expr),
                Expr::If(x, y, z) => {
                    stack.push(Frame::ThenSlot {
                        test: *x,
                        else_branch: *z,
                    });
                    call = Some(*y);
                }
            }
        } else {
            let value = result.take().expect("one of call/result is always set");
            match stack.pop() {
                None => return value,
                Some(Frame::ThenSlot { test, else_branch }) => {
                    stack.push(Frame::ElseSlot {
                        test,
                        then_result: value,
                    });
                    call = Some(else_branch);
                }
                Some(Frame::ElseSlot { test, then_result }) => {
                    result = Some(normif(test, then_result, value));
                }
            }
        }
    }
}

/// Normal-form predicate: no tested `If`s anywhere.
///
/// * `Atom(a)` is normal;
/// * `If(Atom(a), y, z)` is normal iff `y` and `z` are;
/// * `If(If(..), _, _)` is not normal.
pub fn is_normal(e: &Expr) -> bool {
    let mut work = vec![e];
    while let Some(cur) = work.pop() {
        if let Expr::If(test, y, z) = cur {
            if !test.is_atom() {
                return false;
            }
            work.push(y);
            work.push(z);
        }
    }
    true
}

/// Serialize a trace as a JSON array of
/// `{"seq", "depth", "rule", "caller", "callee"}` objects, in that field
/// order, with expressions as canonical prints.
pub fn trace_to_json(trace: &[CallEdge]) -> String {
    #[derive(Serialize)]
    struct Record {
        seq: u64,
        depth: u64,
        rule: &'static str,
        caller: String,
        callee: String,
    }

    let records: Vec<Record> = trace
        .iter()
        .map(|edge| Record {
            seq: edge.seq,
            depth: edge.depth,
            rule: edge.rule.name(),
            caller: edge.caller.to_string(),
            callee: edge.callee.to_string(),
        })
        .collect();
    serde_json::to_string_pretty(&records).expect("trace serialization is infallible")
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Algo {
    Flat,
    Nested,
}

struct Machine {
    fuel_left: u64,
    tracing: bool,
    call_count: u64,
    max_depth: u64,
    trace: Option<Vec<CallEdge>>,
}

impl Machine {
    fn new(fuel: u64, tracing: bool) -> Self {
        Machine {
            fuel_left: fuel,
            tracing,
            call_count: 0,
            max_depth: 0,
            trace: tracing.then(Vec::new),
        }
    }

    // one invocation starts; false means the fuel ran out
    fn begin_call(&mut self, depth: u64) -> bool {
        if self.fuel_left == 0 {
            return false;
        }
        self.fuel_left -= 1;
        self.call_count += 1;
        if depth > self.max_depth {
            self.max_depth = depth;
        }
        true
    }

    fn edge(&mut self, caller: Option<&Expr>, callee: &Expr, rule: RuleTag, depth: u64) {
        if let Some(trace) = &mut self.trace {
            let caller = caller.expect("caller snapshot is taken whenever tracing");
            let seq = trace.len() as u64;
            trace.push(CallEdge {
                caller: caller.clone(),
                callee: callee.clone(),
                rule,
                depth,
                seq,
            });
        }
    }

    fn finish(self, status: NormStatus) -> NormOutcome {
        NormOutcome {
            status,
            call_count: self.call_count,
            max_depth: self.max_depth,
            trace: self.trace,
        }
    }
}

enum Frame {
    // atom-tested If: evaluating the then-branch; else-branch pending
    ThenSlot {
        test: Expr,
        else_branch: Expr,
        caller: Option<Expr>,
        depth: u64,
    },
    // atom-tested If: evaluating the else-branch; then-result saved
    ElseSlot {
        test: Expr,
        then_result: Expr,
    },
    // norm2 tested If: evaluating If(v, y, z); If(w, y, z) pending
    InnerV {
        u: Expr,
        w: Expr,
        y: Expr,
        z: Expr,
        caller: Option<Expr>,
        depth: u64,
    },
    // norm2 tested If: evaluating If(w, y, z); outer call pending
    InnerW {
        u: Expr,
        first: Expr,
        caller: Option<Expr>,
        depth: u64,
    },
}

fn run(algo: Algo, e: Expr, fuel: u64, tracing: bool) -> NormOutcome {
    let mut mach = Machine::new(fuel, tracing);
    let mut stack: Vec<Frame> = Vec::new();
    let mut call = Some((e, 0u64));
    let mut result: Option<Expr> = None;
    loop {
        if let Some((expr, depth)) = call.take() {
            if !mach.begin_call(depth) {
                return mach.finish(NormStatus::FuelExhausted);
            }
            match expr {
                Expr::Atom(_) => result = Some(expr),
                Expr::If(test, y, z) => {
                    let caller = mach
                        .tracing
                        .then(|| Expr::If(test.clone(), y.clone(), z.clone()));
                    match *test {
                        atom @ Expr::Atom(_) => {
                            mach.edge(caller.as_ref(), &y, RuleTag::IfAtLeft, depth);
                            stack.push(Frame::ThenSlot {
                                test: atom,
                                else_branch: *z,
                                caller,
                                depth,
                            });
                            call = Some((*y, depth + 1));
                        }
                        Expr::If(u, v, w) => match algo {
                            Algo::Flat => {
                                let successor = Expr::ite(
                                    *u,
                                    Expr::If(v, y.clone(), z.clone()),
                                    Expr::If(w, y, z),
                                );
                                mach.edge(caller.as_ref(), &successor, RuleTag::IfIf, depth);
                                call = Some((successor, depth + 1));
                            }
                            Algo::Nested => {
                                let inner_v = Expr::If(v, y.clone(), z.clone());
                                mach.edge(caller.as_ref(), &inner_v, RuleTag::IfIfInnerV, depth);
                                stack.push(Frame::InnerV {
                                    u: *u,
                                    w: *w,
                                    y: *y,
                                    z: *z,
                                    caller,
                                    depth,
                                });
                                call = Some((inner_v, depth + 1));
                            }
                        },
                    }
                }
            }
        } else {
            let value = result.take().expect("one of call/result is always set");
            match stack.pop() {
                None => return mach.finish(NormStatus::Completed(value)),
                Some(Frame::ThenSlot {
                    test,
                    else_branch,
                    caller,
                    depth,
                }) => {
                    mach.edge(caller.as_ref(), &else_branch, RuleTag::IfAtRight, depth);
                    stack.push(Frame::ElseSlot {
                        test,
                        then_result: value,
                    });
                    call = Some((else_branch, depth + 1));
                }
                Some(Frame::ElseSlot { test, then_result }) => {
                    result = Some(Expr::ite(test, then_result, value));
                }
                Some(Frame::InnerV {
                    u,
                    w,
                    y,
                    z,
                    caller,
                    depth,
                }) => {
                    let inner_w = Expr::ite(w, y, z);
                    mach.edge(caller.as_ref(), &inner_w, RuleTag::IfIfInnerW, depth);
                    stack.push(Frame::InnerW {
                        u,
                        first: value,
                        caller,
                        depth,
                    });
                    call = Some((inner_w, depth + 1));
                }
                Some(Frame::InnerW {
                    u,
                    first,
                    caller,
                    depth,
                }) => {
                    let outer = Expr::ite(u, first, value);
                    mach.edge(caller.as_ref(), &outer, RuleTag::IfIfOuter, depth);
                    call = Some((outer, depth + 1));
                }
            }
        }
    }
}
