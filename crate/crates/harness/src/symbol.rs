//! JSON symbol documents.
//!
//! ```json
//! {"label": "identity", "u": {"op": "const", "re": 1, "im": 0}, "phi": {"op": "z"}}
//! ```

use std::fs;
use std::path::Path;

use bloch_wco_core::functionals::SymbolPair;
use bloch_wco_core::{Complex, Expr, Node};
use serde::{Deserialize, Serialize};

use crate::HarnessError;

/// One expression node.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "lowercase")]
pub enum NodeDoc {
    Z,
    Const {
        re: f64,
        im: f64,
    },
    Add {
        args: [Box<NodeDoc>; 2],
    },
    Sub {
        args: [Box<NodeDoc>; 2],
    },
    Mul {
        args: [Box<NodeDoc>; 2],
    },
    Div {
        args: [Box<NodeDoc>; 2],
    },
    Neg {
        args: [Box<NodeDoc>; 1],
    },
    Log {
        args: [Box<NodeDoc>; 1],
    },
    Exp {
        args: [Box<NodeDoc>; 1],
    },
    Powint {
        n: u32,
        args: [Box<NodeDoc>; 1],
    },
    /// `args[0](args[1](z))`
    Compose {
        args: [Box<NodeDoc>; 2],
    },
    Mobius {
        re: f64,
        im: f64,
    },
}

/// A labelled pair `(u, φ)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SymbolFile {
    #[serde(default)]
    pub label: Option<String>,
    pub u: NodeDoc,
    pub phi: NodeDoc,
}

impl NodeDoc {
    pub fn to_expr(&self) -> Result<Expr, HarnessError> {
        let b = |a: &NodeDoc| a.to_expr();
        Ok(match self {
            NodeDoc::Z => Expr::z(),
            NodeDoc::Const { re, im } => Expr::constant(Complex::new(*re, *im)),
            NodeDoc::Add { args: [x, y] } => b(x)? + b(y)?,
            NodeDoc::Sub { args: [x, y] } => b(x)? - b(y)?,
            NodeDoc::Mul { args: [x, y] } => b(x)? * b(y)?,
            NodeDoc::Div { args: [x, y] } => b(x)? / b(y)?,
            NodeDoc::Neg { args: [x] } => -b(x)?,
            NodeDoc::Log { args: [x] } => b(x)?.ln(),
            NodeDoc::Exp { args: [x] } => b(x)?.exp(),
            NodeDoc::Powint { n, args: [x] } => b(x)?.powi(*n),
            NodeDoc::Compose { args: [f, g] } => b(f)?.compose(&b(g)?),
            NodeDoc::Mobius { re, im } => Expr::mobius(Complex::new(*re, *im))?,
        })
    }

    pub fn from_expr(e: &Expr) -> NodeDoc {
        let b = |x: &Expr| Box::new(NodeDoc::from_expr(x));
        match e.node() {
            Node::Var => NodeDoc::Z,
            Node::Const(c) => NodeDoc::Const { re: c.re, im: c.im },
            Node::Add(x, y) => NodeDoc::Add { args: [b(x), b(y)] },
            Node::Sub(x, y) => NodeDoc::Sub { args: [b(x), b(y)] },
            Node::Mul(x, y) => NodeDoc::Mul { args: [b(x), b(y)] },
            Node::Div(x, y) => NodeDoc::Div { args: [b(x), b(y)] },
            Node::Neg(x) => NodeDoc::Neg { args: [b(x)] },
            Node::Log(x) => NodeDoc::Log { args: [b(x)] },
            Node::Exp(x) => NodeDoc::Exp { args: [b(x)] },
            Node::PowInt(n, x) => NodeDoc::Powint { n: *n, args: [b(x)] },
            Node::Compose(f, g) => NodeDoc::Compose { args: [b(f), b(g)] },
            Node::Mobius(a) => NodeDoc::Mobius { re: a.re, im: a.im },
        }
    }
}

/// A validated pair with its label.
#[derive(Debug, Clone)]
pub struct LabeledPair {
    pub label: String,
    pub pair: SymbolPair,
}

impl SymbolFile {
    pub fn parse_str(text: &str) -> Result<Self, HarnessError> {
        serde_json::from_str(text).map_err(|e| HarnessError::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("symbol documents always serialize")
    }

    pub fn from_exprs(label: Option<String>, u: &Expr, phi: &Expr) -> Self {
        SymbolFile {
            label,
            u: NodeDoc::from_expr(u),
            phi: NodeDoc::from_expr(phi),
        }
    }

    /// Builds the expressions and validates `φ`. Unlabelled documents take
    /// `fallback` as their label.
    pub fn into_pair(self, fallback: &str) -> Result<LabeledPair, HarnessError> {
        let u = self.u.to_expr()?;
        let phi = self.phi.to_expr()?;
        let label = self.label.unwrap_or_else(|| fallback.to_string());
        Ok(LabeledPair {
            label,
            pair: SymbolPair::new(u, phi)?,
        })
    }
}

/// Reads and validates a symbol file.
pub fn parse_symbol_file(path: &Path) -> Result<LabeledPair, HarnessError> {
    let text = fs::read_to_string(path).map_err(|e| HarnessError::Io {
        path: path.display().to_string(),
        source: e,
    })?;
    let fallback = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    SymbolFile::parse_str(&text)?.into_pair(&fallback)
}

#[cfg(test)]
mod tests {
    use super::*;
    use bloch_wco_core::Error;

    #[test]
    fn half_identity_document() {
        let doc = r#"{"label":"half","u":{"op":"const","re":1,"im":0},
            "phi":{"op":"div","args":[{"op":"z"},{"op":"const","re":2,"im":0}]}}"#;
        let p = SymbolFile::parse_str(doc).unwrap().into_pair("x").unwrap();
        assert_eq!(p.label, "half");
        assert!((p.pair.report().sup_modulus - 0.5).abs() < 1e-6);
    }

    #[test]
    fn mobius_node() {
        let doc = r#"{"u":{"op":"const","re":1,"im":0},"phi":{"op":"mobius","re":0.5,"im":0}}"#;
        let p = SymbolFile::parse_str(doc).unwrap().into_pair("fallback").unwrap();
        assert_eq!(p.label, "fallback");
        assert!((p.pair.phi(Complex::new(0.0, 0.0)).unwrap() - Complex::new(0.5, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn doubling_is_not_a_self_map() {
        let doc = r#"{"u":{"op":"const","re":1,"im":0},
            "phi":{"op":"mul","args":[{"op":"const","re":2,"im":0},{"op":"z"}]}}"#;
        let e = SymbolFile::parse_str(doc).unwrap().into_pair("x").unwrap_err();
        assert!(matches!(e, HarnessError::Core(Error::NotSelfMap { .. })));
    }

    #[test]
    fn parse_errors_carry_positions() {
        let doc = "{\n  \"u\": {\"op\": \"zz\"},\n  \"phi\": {\"op\": \"z\"}\n}";
        match SymbolFile::parse_str(doc) {
            Err(HarnessError::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
        assert!(SymbolFile::parse_str(r#"{"u":{"op":"add","args":[{"op":"z"}]},"phi":{"op":"z"}}"#).is_err());
    }
}
