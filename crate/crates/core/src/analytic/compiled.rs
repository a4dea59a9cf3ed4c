//! Flat register programs for fast repeated evaluation of an [`Expr`].
//!
//! Every instruction writes one register; register 0 holds the input `z`.
//! `Compose(f, g)` is inlined by compiling `f` against the register holding
//! `g(z)`, and shared subtrees are emitted once per input register.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use smallvec::SmallVec;

use super::expr::{checked_div, checked_ln, mobius_value, powu, Expr, Node};
use crate::error::{Error, Result};
use crate::Complex;

#[derive(Debug, Clone, Copy)]
enum Instr {
    Const(Complex),
    Add(u32, u32),
    Sub(u32, u32),
    Mul(u32, u32),
    Div(u32, u32),
    Neg(u32),
    Pow(u32, u32),
    Log(u32),
    Exp(u32),
    Mobius(Complex, u32),
}

/// Compiled form of an [`Expr`]. Evaluation is pure and thread-safe.
#[derive(Debug, Clone)]
pub struct Compiled {
    code: Vec<Instr>,
    out: u32,
}

struct Builder {
    code: Vec<Instr>,
    memo: BTreeMap<(usize, u32), u32>,
}

impl Builder {
    fn emit(&mut self, ins: Instr) -> u32 {
        self.code.push(ins);
        self.code.len() as u32
    }

    fn build(&mut self, e: &Expr, var: u32) -> u32 {
        if let Node::Var = e.node() {
            return var;
        }
        let key = (e.ptr(), var);
        if let Some(&r) = self.memo.get(&key) {
            return r;
        }
        let r = match e.node() {
            Node::Var => unreachable!(),
            Node::Const(c) => self.emit(Instr::Const(*c)),
            Node::Add(a, b) => {
                let (x, y) = (self.build(a, var), self.build(b, var));
                self.emit(Instr::Add(x, y))
            }
            Node::Sub(a, b) => {
                let (x, y) = (self.build(a, var), self.build(b, var));
                self.emit(Instr::Sub(x, y))
            }
            Node::Mul(a, b) => {
                let (x, y) = (self.build(a, var), self.build(b, var));
                self.emit(Instr::Mul(x, y))
            }
            Node::Div(a, b) => {
                let (x, y) = (self.build(a, var), self.build(b, var));
                self.emit(Instr::Div(x, y))
            }
            Node::Neg(a) => {
                let x = self.build(a, var);
                self.emit(Instr::Neg(x))
            }
            Node::PowInt(n, a) => {
                let x = self.build(a, var);
                self.emit(Instr::Pow(x, *n))
            }
            Node::Compose(f, g) => {
                let inner = self.build(g, var);
                self.build(f, inner)
            }
            Node::Log(a) => {
                let x = self.build(a, var);
                self.emit(Instr::Log(x))
            }
            Node::Exp(a) => {
                let x = self.build(a, var);
                self.emit(Instr::Exp(x))
            }
            Node::Mobius(a) => self.emit(Instr::Mobius(*a, var)),
        };
        self.memo.insert(key, r);
        r
    }
}

impl Compiled {
    pub fn new(expr: &Expr) -> Self {
        let mut b = Builder {
            code: Vec::new(),
            memo: BTreeMap::new(),
        };
        let out = b.build(expr, 0);
        Compiled { code: b.code, out }
    }

    pub fn len(&self) -> usize {
        self.code.len()
    }

    pub fn is_empty(&self) -> bool {
        self.code.is_empty()
    }

    /// Same contract as [`Expr::eval`].
    pub fn eval(&self, z: Complex) -> Result<Complex> {
        let mut regs: SmallVec<[Complex; 64]> = SmallVec::with_capacity(self.code.len() + 1);
        regs.push(z);
        for ins in &self.code {
            let v = match *ins {
                Instr::Const(c) => c,
                Instr::Add(a, b) => regs[a as usize] + regs[b as usize],
                Instr::Sub(a, b) => regs[a as usize] - regs[b as usize],
                Instr::Mul(a, b) => regs[a as usize] * regs[b as usize],
                Instr::Div(a, b) => checked_div(regs[a as usize], regs[b as usize], z)?,
                Instr::Neg(a) => -regs[a as usize],
                Instr::Pow(a, n) => powu(regs[a as usize], n),
                Instr::Log(a) => checked_ln(regs[a as usize], z)?,
                Instr::Exp(a) => regs[a as usize].exp(),
                Instr::Mobius(a, x) => {
                    mobius_value(a, regs[x as usize]).map_err(|_| Error::DivisionNearZero { at: z })?
                }
            };
            regs.push(v);
        }
        let v = regs[self.out as usize];
        if v.re.is_finite() && v.im.is_finite() {
            Ok(v)
        } else {
            Err(Error::NonFinite { at: z })
        }
    }
}

impl Expr {
    pub fn compile(&self) -> Compiled {
        Compiled::new(self)
    }
}
