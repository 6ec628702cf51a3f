//! Random nets and executable checks of the monoidal, cartesian and trace
//! axioms.
//!
//! Every law is tagged with its home category. Net-level laws hold up to
//! isomorphism of raw nets; sNet-level laws hold up to isomorphism of normal
//! forms. [`Law::DuplicationNaturalityRaw`] is the sNet law checked in raw Net,
//! where it is expected to fail as soon as the net contains an operator.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::iso::is_isomorphic;
use crate::kahn::{ConstK, Interpretation, Iota, Lift, Plus, Stream, StreamFn};
use crate::net::{
    compose, duplication, erasure, generator, identity, projection, projection_second, symmetry,
    tensor, trace, wiring, Arity, Net, NetError, Signature,
};
use crate::rewrite::normalize;

/// Signature used for generated nets: `f: 1->1`, `g: 2->1`, `h: 1->2`,
/// `d: 1->1` (a delay under [`law_interpretation`]) and `k: 0->1`.
pub fn law_signature() -> Signature {
    Signature::new()
        .with("f", 1, 1)
        .with("g", 2, 1)
        .with("h", 1, 2)
        .with("d", 1, 1)
        .with("k", 0, 1)
}

/// Splits a stream into itself and its negation.
#[derive(Debug, Clone, Copy)]
pub struct Fork;

impl StreamFn for Fork {
    fn arity(&self) -> Arity {
        Arity::new(1, 2)
    }
    fn apply(&self, inputs: &[&Stream], _: &[&Stream]) -> Vec<Stream> {
        let s = inputs[0];
        vec![s.clone(), Stream(s.0.iter().map(|x| -x).collect())]
    }
}

/// Integer-preserving interpretation of [`law_signature`].
pub fn law_interpretation() -> Interpretation {
    Interpretation::new()
        .bind("f", Lift::new("2x+1", |x| 2.0 * x + 1.0))
        .bind("g", Plus)
        .bind_arc("h", Arc::new(Fork))
        .bind("d", Iota)
        .bind("k", ConstK(1.0))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GenParams {
    pub seed: u64,
    pub max_operators: usize,
    pub max_arity: usize,
    pub max_boundary: usize,
    pub signature: Signature,
}

impl GenParams {
    pub fn new(seed: u64) -> Self {
        GenParams {
            seed,
            max_operators: 4,
            max_arity: 2,
            max_boundary: 3,
            signature: law_signature(),
        }
    }

    pub fn with_seed(&self, seed: u64) -> Self {
        GenParams {
            seed,
            ..self.clone()
        }
    }

    pub fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }
}

/// One undriven-or-constant source wire, used when a layer needs an input
/// and none is available. Loop-free nets use a nullary symbol when the
/// signature has one.
fn source(params: &GenParams, loops: bool) -> Net {
    if !loops {
        let constant = params
            .signature
            .iter()
            .find(|(_, a)| a.inputs == 0 && a.outputs == 1)
            .map(|(s, _)| s.to_string());
        if let Some(symbol) = constant {
            return generator(&params.signature, &symbol).expect("declared symbol");
        }
    }
    trace(&duplication(1), 1).expect("dup has a wire to close")
}

/// A random valid net `dom -> cod`. With `loops`, the result may be traced
/// and may contain undriven ports; without, it is acyclic and every port is
/// driven or a boundary input (whenever the signature has a nullary symbol).
pub fn gen_net(rng: &mut impl Rng, params: &GenParams, dom: usize, cod: usize, loops: bool) -> Net {
    let symbols: Vec<(String, Arity)> = params
        .signature
        .iter()
        .filter(|(_, a)| a.inputs <= params.max_arity && a.outputs <= params.max_arity)
        .map(|(s, a)| (s.to_string(), a))
        .collect();
    let feedback = if loops && rng.gen_bool(0.4) {
        rng.gen_range(1..=2)
    } else {
        0
    };
    let mut width = dom + feedback;
    let mut net = identity(width);
    let steps = if symbols.is_empty() {
        0
    } else {
        rng.gen_range(0..=params.max_operators)
    };
    let keep_limit = params.max_boundary + 2;
    for _ in 0..steps {
        let (symbol, arity) = &symbols[rng.gen_range(0..symbols.len())];
        if width == 0 && arity.inputs > 0 {
            let s = source(params, loops);
            width += s.cod();
            net = tensor(&net, &s);
        }
        let mut selection: Vec<usize> = (0..arity.inputs).map(|_| rng.gen_range(0..width)).collect();
        let mut kept = Vec::new();
        for w in 0..width {
            match rng.gen_range(0..10) {
                0 => {}
                1 => kept.extend([w, w]),
                _ => kept.push(w),
            }
        }
        kept.truncate(keep_limit);
        kept.shuffle(rng);
        let kept_len = kept.len();
        selection.extend(kept);
        let layer = tensor(
            &generator(&params.signature, symbol).expect("declared symbol"),
            &identity(kept_len),
        );
        let w = wiring(width, &selection).expect("selection within width");
        net = compose(&compose(&net, &w).expect("width matches"), &layer).expect("layer arity matches");
        width = arity.outputs + kept_len;
    }
    let target = cod + feedback;
    if width == 0 && target > 0 {
        let s = source(params, loops);
        width += s.cod();
        net = tensor(&net, &s);
    }
    let selection: Vec<usize> = (0..target).map(|_| rng.gen_range(0..width)).collect();
    net = compose(&net, &wiring(width, &selection).expect("selection within width")).expect("width matches");
    if feedback > 0 {
        net = trace(&net, feedback).expect("feedback wires present");
    }
    net
}

/// Random net with random boundary sizes, deterministic in `params`.
pub fn gen_random_net(params: &GenParams) -> Net {
    let mut rng = params.rng();
    let dom = rng.gen_range(0..=params.max_boundary);
    let cod = rng.gen_range(0..=params.max_boundary);
    gen_net(&mut rng, params, dom, cod, true)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Category {
    /// Raw nets up to isomorphism.
    Net,
    /// Nets up to isomorphism of se-normal forms.
    SNet,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Law {
    /// `Tr^{x+y}(f) = Tr^x(Tr^y(f))`, and `Tr^0(f) = f` when `x = y = 0`.
    Vanishing,
    /// `Tr^x(g ⊗ f) = g ⊗ Tr^x(f)`.
    Superposing,
    /// `Tr^x(γ_{x,x}) = id_x`.
    Yanking,
    /// `Tr^x((h ⊗ id_x); f) = h; Tr^x(f)`.
    NaturalityA,
    /// `Tr^x(f; (k ⊗ id_x)) = Tr^x(f); k`.
    NaturalityB,
    /// `Tr^x(f; (id_b ⊗ g)) = Tr^y((id_a ⊗ g); f)` for `f: a+x -> b+y`, `g: y -> x`.
    Sliding,
    AssocCompose,
    AssocTensor,
    UnitCompose,
    UnitTensor,
    /// `(f1 ⊗ f2); (g1 ⊗ g2) = (f1; g1) ⊗ (f2; g2)`.
    Interchange,
    /// `γ_{m,n}; γ_{n,m} = id`.
    SymmetryInvolution,
    /// `(f ⊗ g); γ = γ; (g ⊗ f)`.
    SymmetryNaturality,
    /// `δ; (id ⊗ ε) = id`.
    Counit,
    Coassoc,
    /// `δ; γ = δ`.
    Cocomm,
    /// `⟨f, g⟩; π1 = f` and `⟨f, g⟩; π2 = g`.
    ProjectionPairing,
    /// `⟨h; π1, h; π2⟩ = h`.
    PairingUniqueness,
    /// `f; δ = δ; (f ⊗ f)` up to normal forms.
    DuplicationNaturality,
    /// `f; ε = ε`.
    ErasureNaturality,
    /// `f; δ = δ; (f ⊗ f)` in raw Net. Fails for nets with operators.
    DuplicationNaturalityRaw,
}

impl Law {
    pub const ALL: [Law; 21] = [
        Law::Vanishing,
        Law::Superposing,
        Law::Yanking,
        Law::NaturalityA,
        Law::NaturalityB,
        Law::Sliding,
        Law::AssocCompose,
        Law::AssocTensor,
        Law::UnitCompose,
        Law::UnitTensor,
        Law::Interchange,
        Law::SymmetryInvolution,
        Law::SymmetryNaturality,
        Law::Counit,
        Law::Coassoc,
        Law::Cocomm,
        Law::ProjectionPairing,
        Law::PairingUniqueness,
        Law::DuplicationNaturality,
        Law::ErasureNaturality,
        Law::DuplicationNaturalityRaw,
    ];

    pub const TRACE: [Law; 3] = [Law::Vanishing, Law::Superposing, Law::Yanking];

    pub fn name(self) -> &'static str {
        match self {
            Law::Vanishing => "vanishing",
            Law::Superposing => "superposing",
            Law::Yanking => "yanking",
            Law::NaturalityA => "naturality-a",
            Law::NaturalityB => "naturality-b",
            Law::Sliding => "sliding",
            Law::AssocCompose => "assoc-compose",
            Law::AssocTensor => "assoc-tensor",
            Law::UnitCompose => "unit-compose",
            Law::UnitTensor => "unit-tensor",
            Law::Interchange => "interchange",
            Law::SymmetryInvolution => "symmetry-involution",
            Law::SymmetryNaturality => "symmetry-naturality",
            Law::Counit => "counit",
            Law::Coassoc => "coassoc",
            Law::Cocomm => "cocomm",
            Law::ProjectionPairing => "projection-pairing",
            Law::PairingUniqueness => "pairing-uniqueness",
            Law::DuplicationNaturality => "duplication-naturality",
            Law::ErasureNaturality => "erasure-naturality",
            Law::DuplicationNaturalityRaw => "duplication-naturality-raw",
        }
    }

    pub fn category(self) -> Category {
        match self {
            Law::ProjectionPairing
            | Law::PairingUniqueness
            | Law::DuplicationNaturality
            | Law::ErasureNaturality => Category::SNet,
            _ => Category::Net,
        }
    }

    /// Whether the law is expected to hold on every generated instance.
    pub fn expected(self) -> bool {
        self != Law::DuplicationNaturalityRaw
    }

    /// A random instance of the arities the law demands. sNet laws get
    /// loop-free nets: a dead feedback loop reads its own output and is never
    /// erased, so those laws fail on cyclic nets.
    pub fn instance(self, rng: &mut impl Rng, params: &GenParams) -> Instance {
        let b = params.max_boundary;
        let mut w = |lo: usize, hi: usize| rng.gen_range(lo..=hi);
        let widths: Vec<usize> = match self {
            Law::Vanishing | Law::Sliding => vec![w(0, 2), w(0, 2), w(0, b), w(0, b)],
            Law::Superposing | Law::NaturalityA | Law::NaturalityB => {
                vec![w(0, 2), w(0, b), w(0, b), w(0, b)]
            }
            Law::Yanking => vec![w(0, b)],
            Law::SymmetryInvolution => vec![w(0, b), w(0, b)],
            Law::Counit | Law::Coassoc | Law::Cocomm => vec![w(0, b)],
            Law::AssocCompose
            | Law::AssocTensor
            | Law::Interchange
            | Law::SymmetryNaturality
            | Law::ProjectionPairing => vec![w(0, b), w(0, b), w(0, b), w(0, b), w(0, b)],
            Law::UnitCompose
            | Law::UnitTensor
            | Law::PairingUniqueness
            | Law::DuplicationNaturality
            | Law::ErasureNaturality
            | Law::DuplicationNaturalityRaw => vec![w(0, b), w(0, b), w(0, b)],
        };
        let loops = self.category() == Category::Net;
        let mut g = |m: usize, n: usize| gen_net(rng, params, m, n, loops);
        let (nets, widths) = match self {
            Law::Vanishing => {
                let [x, y, a, c] = widths[..] else { unreachable!() };
                (vec![g(a + x + y, c + x + y)], vec![x, y])
            }
            Law::Superposing => {
                let [x, a, c, d] = widths[..] else { unreachable!() };
                (vec![g(a + x, c + x), g(d, a)], vec![x])
            }
            Law::NaturalityA | Law::NaturalityB => {
                let [x, a, c, d] = widths[..] else { unreachable!() };
                let other = if self == Law::NaturalityA { g(d, a) } else { g(c, d) };
                (vec![g(a + x, c + x), other], vec![x])
            }
            Law::Sliding => {
                let [x, y, a, c] = widths[..] else { unreachable!() };
                (vec![g(a + x, c + y), g(y, x)], vec![x, y])
            }
            Law::Yanking | Law::Counit | Law::Coassoc | Law::Cocomm => (vec![], widths),
            Law::SymmetryInvolution => (vec![], widths),
            Law::AssocCompose => {
                let [a, c, d, e, _] = widths[..] else { unreachable!() };
                (vec![g(a, c), g(c, d), g(d, e)], vec![])
            }
            Law::AssocTensor => {
                let [a, c, d, e, h] = widths[..] else { unreachable!() };
                (vec![g(a, c), g(d, e), g(h, a)], vec![])
            }
            Law::Interchange => {
                let [a, c, d, e, h] = widths[..] else { unreachable!() };
                (vec![g(a, c), g(c, d), g(e, h), g(h, a)], vec![])
            }
            Law::SymmetryNaturality => {
                let [a, c, d, e, _] = widths[..] else { unreachable!() };
                (vec![g(a, c), g(d, e)], vec![])
            }
            Law::ProjectionPairing => {
                let [a, c, d, ..] = widths[..] else { unreachable!() };
                (vec![g(d, a), g(d, c)], vec![])
            }
            Law::PairingUniqueness => {
                let [a, c, d] = widths[..] else { unreachable!() };
                (vec![g(d, a + c)], vec![a, c])
            }
            Law::UnitCompose
            | Law::UnitTensor
            | Law::DuplicationNaturality
            | Law::ErasureNaturality
            | Law::DuplicationNaturalityRaw => {
                let [a, c, _] = widths[..] else { unreachable!() };
                (vec![g(a, c)], vec![])
            }
        };
        Instance { nets, widths }
    }
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Law {
    type Err = LawError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Law::ALL
            .into_iter()
            .find(|l| l.name() == s)
            .ok_or_else(|| LawError::UnknownLaw(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LawError {
    #[error("{law}: {detail}")]
    ArityMismatch { law: Law, detail: String },
    #[error("unknown law `{0}`")]
    UnknownLaw(String),
    #[error(transparent)]
    Net(#[from] NetError),
}

/// The nets and wire counts a law is instantiated at.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Instance {
    pub nets: Vec<Net>,
    pub widths: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Counterexample {
    pub instance: Instance,
    pub left: Net,
    pub right: Net,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub law: Law,
    pub category: Category,
    pub holds: bool,
    pub counterexample: Option<Box<Counterexample>>,
}

fn shape(law: Law, inst: &Instance, nets: usize, widths: usize) -> Result<(), LawError> {
    if inst.nets.len() != nets || inst.widths.len() != widths {
        return Err(LawError::ArityMismatch {
            law,
            detail: format!(
                "expected {nets} nets and {widths} widths, got {} and {}",
                inst.nets.len(),
                inst.widths.len()
            ),
        });
    }
    Ok(())
}

fn need(law: Law, ok: bool, detail: impl FnOnce() -> String) -> Result<(), LawError> {
    if ok {
        Ok(())
    } else {
        Err(LawError::ArityMismatch {
            law,
            detail: detail(),
        })
    }
}

fn arity(n: &Net) -> String {
    format!("{}->{}", n.dom(), n.cod())
}

/// Pairing `⟨f, g⟩ = δ; (f ⊗ g)`.
fn pairing(f: &Net, g: &Net) -> Result<Net, NetError> {
    compose(&duplication(f.dom()), &tensor(f, g))
}

/// The equations a law instance asserts, as `(left, right)` pairs.
fn equations(law: Law, inst: &Instance) -> Result<Vec<(Net, Net)>, LawError> {
    let nets = &inst.nets;
    let ws = &inst.widths;
    let eqs = match law {
        Law::Vanishing => {
            shape(law, inst, 1, 2)?;
            let (x, y) = (ws[0], ws[1]);
            let f = &nets[0];
            let mut eqs = vec![(trace(f, x + y)?, trace(&trace(f, y)?, x)?)];
            if x + y == 0 {
                eqs.push((trace(f, 0)?, f.clone()));
            }
            eqs
        }
        Law::Superposing => {
            shape(law, inst, 2, 1)?;
            let (f, g) = (&nets[0], &nets[1]);
            vec![(trace(&tensor(g, f), ws[0])?, tensor(g, &trace(f, ws[0])?))]
        }
        Law::Yanking => {
            shape(law, inst, 0, 1)?;
            vec![(trace(&symmetry(ws[0], ws[0]), ws[0])?, identity(ws[0]))]
        }
        Law::NaturalityA => {
            shape(law, inst, 2, 1)?;
            let (f, h, x) = (&nets[0], &nets[1], ws[0]);
            need(law, f.dom() >= x && h.cod() + x == f.dom(), || {
                format!("f: {} and h: {} at x = {x}", arity(f), arity(h))
            })?;
            vec![(
                trace(&compose(&tensor(h, &identity(x)), f)?, x)?,
                compose(h, &trace(f, x)?)?,
            )]
        }
        Law::NaturalityB => {
            shape(law, inst, 2, 1)?;
            let (f, k, x) = (&nets[0], &nets[1], ws[0]);
            need(law, f.cod() >= x && k.dom() + x == f.cod(), || {
                format!("f: {} and k: {} at x = {x}", arity(f), arity(k))
            })?;
            vec![(
                trace(&compose(f, &tensor(k, &identity(x)))?, x)?,
                compose(&trace(f, x)?, k)?,
            )]
        }
        Law::Sliding => {
            shape(law, inst, 2, 2)?;
            let (f, g, x, y) = (&nets[0], &nets[1], ws[0], ws[1]);
            need(
                law,
                f.dom() >= x && f.cod() >= y && g.dom() == y && g.cod() == x,
                || format!("f: {} and g: {} at x = {x}, y = {y}", arity(f), arity(g)),
            )?;
            let (a, b) = (f.dom() - x, f.cod() - y);
            vec![(
                trace(&compose(f, &tensor(&identity(b), g))?, x)?,
                trace(&compose(&tensor(&identity(a), g), f)?, y)?,
            )]
        }
        Law::AssocCompose => {
            shape(law, inst, 3, 0)?;
            let (f, g, h) = (&nets[0], &nets[1], &nets[2]);
            vec![(compose(&compose(f, g)?, h)?, compose(f, &compose(g, h)?)?)]
        }
        Law::AssocTensor => {
            shape(law, inst, 3, 0)?;
            let (f, g, h) = (&nets[0], &nets[1], &nets[2]);
            vec![(tensor(&tensor(f, g), h), tensor(f, &tensor(g, h)))]
        }
        Law::UnitCompose => {
            shape(law, inst, 1, 0)?;
            let f = &nets[0];
            vec![
                (compose(&identity(f.dom()), f)?, f.clone()),
                (compose(f, &identity(f.cod()))?, f.clone()),
            ]
        }
        Law::UnitTensor => {
            shape(law, inst, 1, 0)?;
            let f = &nets[0];
            vec![
                (tensor(&identity(0), f), f.clone()),
                (tensor(f, &identity(0)), f.clone()),
            ]
        }
        Law::Interchange => {
            shape(law, inst, 4, 0)?;
            let (f1, g1, f2, g2) = (&nets[0], &nets[1], &nets[2], &nets[3]);
            vec![(
                compose(&tensor(f1, f2), &tensor(g1, g2))?,
                tensor(&compose(f1, g1)?, &compose(f2, g2)?),
            )]
        }
        Law::SymmetryInvolution => {
            shape(law, inst, 0, 2)?;
            let (m, n) = (ws[0], ws[1]);
            vec![(compose(&symmetry(m, n), &symmetry(n, m))?, identity(m + n))]
        }
        Law::SymmetryNaturality => {
            shape(law, inst, 2, 0)?;
            let (f, g) = (&nets[0], &nets[1]);
            vec![(
                compose(&tensor(f, g), &symmetry(f.cod(), g.cod()))?,
                compose(&symmetry(f.dom(), g.dom()), &tensor(g, f))?,
            )]
        }
        Law::Counit => {
            shape(law, inst, 0, 1)?;
            let n = ws[0];
            vec![
                (compose(&duplication(n), &tensor(&identity(n), &erasure(n)))?, identity(n)),
                (compose(&duplication(n), &tensor(&erasure(n), &identity(n)))?, identity(n)),
            ]
        }
        Law::Coassoc => {
            shape(law, inst, 0, 1)?;
            let n = ws[0];
            vec![(
                compose(&duplication(n), &tensor(&duplication(n), &identity(n)))?,
                compose(&duplication(n), &tensor(&identity(n), &duplication(n)))?,
            )]
        }
        Law::Cocomm => {
            shape(law, inst, 0, 1)?;
            let n = ws[0];
            vec![(compose(&duplication(n), &symmetry(n, n))?, duplication(n))]
        }
        Law::ProjectionPairing => {
            shape(law, inst, 2, 0)?;
            let (f, g) = (&nets[0], &nets[1]);
            need(law, f.dom() == g.dom(), || format!("f: {} and g: {}", arity(f), arity(g)))?;
            let p = pairing(f, g)?;
            vec![
                (compose(&p, &projection(f.cod(), g.cod()))?, f.clone()),
                (compose(&p, &projection_second(f.cod(), g.cod()))?, g.clone()),
            ]
        }
        Law::PairingUniqueness => {
            shape(law, inst, 1, 2)?;
            let (h, a, c) = (&nets[0], ws[0], ws[1]);
            need(law, h.cod() == a + c, || format!("h: {} at {a} + {c}", arity(h)))?;
            let left = compose(h, &projection(a, c))?;
            let right = compose(h, &projection_second(a, c))?;
            vec![(pairing(&left, &right)?, h.clone())]
        }
        Law::DuplicationNaturality | Law::DuplicationNaturalityRaw => {
            shape(law, inst, 1, 0)?;
            let f = &nets[0];
            vec![(
                compose(f, &duplication(f.cod()))?,
                compose(&duplication(f.dom()), &tensor(f, f))?,
            )]
        }
        Law::ErasureNaturality => {
            shape(law, inst, 1, 0)?;
            let f = &nets[0];
            vec![(compose(f, &erasure(f.cod()))?, erasure(f.dom()))]
        }
    };
    Ok(eqs)
}

/// Builds both sides of `law` at `inst` and compares them in the law's home
/// category.
pub fn check_axiom(law: Law, inst: &Instance) -> Result<CheckResult, LawError> {
    let home = law.category();
    for (left, right) in equations(law, inst)? {
        let (l, r) = match home {
            Category::Net => (left, right),
            Category::SNet => (normalize(&left).into_net(), normalize(&right).into_net()),
        };
        if !is_isomorphic(&l, &r) {
            return Ok(CheckResult {
                law,
                category: home,
                holds: false,
                counterexample: Some(Box::new(Counterexample {
                    instance: inst.clone(),
                    left: l,
                    right: r,
                })),
            });
        }
    }
    Ok(CheckResult {
        law,
        category: home,
        holds: true,
        counterexample: None,
    })
}

/// Outcome of checking one law on many random instances.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LawSummary {
    pub law: Law,
    pub category: Category,
    pub expected: bool,
    pub checked: usize,
    pub held: usize,
    /// First failing instance, preferring one that contains an operator.
    pub counterexample: Option<Box<Counterexample>>,
}

impl LawSummary {
    /// Every instance held, or for the raw-Net duplication law, at least one
    /// instance with an operator failed.
    pub fn as_expected(&self) -> bool {
        if self.expected {
            self.held == self.checked
        } else {
            self.counterexample
                .as_ref()
                .is_some_and(|c| c.instance.nets.iter().any(|n| !n.operators().is_empty()))
        }
    }
}

/// Checks `law` on `count` instances; instance `i` is drawn from seed
/// `params.seed + i`. Instances are independent and run in parallel.
pub fn check_random(law: Law, params: &GenParams, count: usize) -> Result<LawSummary, LawError> {
    let results: Vec<CheckResult> = (0..count as u64)
        .into_par_iter()
        .map(|i| {
            let p = params.with_seed(params.seed.wrapping_add(i));
            let inst = law.instance(&mut p.rng(), &p);
            check_axiom(law, &inst)
        })
        .collect::<Result<_, _>>()?;
    let held = results.iter().filter(|r| r.holds).count();
    let mut failures: Vec<Box<Counterexample>> =
        results.into_iter().filter_map(|r| r.counterexample).collect();
    let pick = failures
        .iter()
        .position(|c| c.instance.nets.iter().any(|n| !n.operators().is_empty()))
        .unwrap_or(0);
    Ok(LawSummary {
        law,
        category: law.category(),
        expected: law.expected(),
        checked: count,
        held,
        counterexample: if failures.is_empty() {
            None
        } else {
            Some(failures.swap_remove(pick))
        },
    })
}
