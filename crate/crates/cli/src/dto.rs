//! JSON shapes for the core types. Rationals travel as `"p/q"` strings.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use tropsev::arith::{fmt_q, parse_q, IVec, Q, QVec};
use tropsev::moves::{CertificateStep, Move, MoveCertificate, ReductionCase, Terminal};
use tropsev::polygon::{LatticePolygon, TangencyProfile};
use tropsev::tropical::{CombinatorialType, Curve, Edge, Germ, Leg, TypeEdge, Vertex};
use tropsev::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Rat(pub String);

impl Rat {
    pub fn of(x: &Q) -> Self {
        Rat(fmt_q(x))
    }

    pub fn get(&self) -> Result<Q> {
        parse_q(&self.0).ok_or_else(|| Error::InvalidCurve(format!("not a rational: {:?}", self.0)))
    }
}

fn pair(v: &QVec) -> [Rat; 2] {
    [Rat::of(&v[0]), Rat::of(&v[1])]
}

fn unpair(v: &[Rat; 2]) -> Result<QVec> {
    Ok([v[0].get()?, v[1].get()?])
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolygonDto {
    pub vertices: Vec<IVec>,
}

impl PolygonDto {
    pub fn of(p: &LatticePolygon) -> Self {
        PolygonDto { vertices: p.vertices().to_vec() }
    }

    pub fn get(&self) -> Result<LatticePolygon> {
        LatticePolygon::new(self.vertices.clone())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SideProfileDto {
    pub tangencies: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProfileDto {
    pub sides: Vec<SideProfileDto>,
}

impl ProfileDto {
    pub fn of(p: &TangencyProfile) -> Self {
        ProfileDto { sides: p.sides.iter().map(|t| SideProfileDto { tangencies: t.clone() }).collect() }
    }

    pub fn get(&self) -> TangencyProfile {
        TangencyProfile { sides: self.sides.iter().map(|s| s.tangencies.clone()).collect() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexDto {
    pub id: usize,
    #[serde(default)]
    pub weight: u32,
    pub pos: [Rat; 2],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeDto {
    pub id: usize,
    pub v: usize,
    pub w: usize,
    pub length: Rat,
    pub slope: IVec,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LegDto {
    pub id: usize,
    pub v: usize,
    pub slope: IVec,
}

impl LegDto {
    fn of(l: &Leg) -> Self {
        LegDto { id: l.id, v: l.v, slope: l.slope }
    }

    fn get(&self) -> Leg {
        Leg { id: self.id, v: self.v, slope: self.slope }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveDto {
    pub vertices: Vec<VertexDto>,
    pub edges: Vec<EdgeDto>,
    pub legs: Vec<LegDto>,
}

impl CurveDto {
    pub fn of(c: &Curve) -> Self {
        CurveDto {
            vertices: c.vertices.values().map(|v| VertexDto { id: v.id, weight: v.weight, pos: pair(&v.pos) }).collect(),
            edges: c
                .edges
                .values()
                .map(|e| EdgeDto { id: e.id, v: e.v, w: e.w, length: Rat::of(&e.length), slope: e.slope })
                .collect(),
            legs: c.legs.iter().map(LegDto::of).collect(),
        }
    }

    /// Builds the curve without validating it.
    pub fn get(&self) -> Result<Curve> {
        let mut c = Curve::default();
        for v in &self.vertices {
            if c.vertices.insert(v.id, Vertex { id: v.id, weight: v.weight, pos: unpair(&v.pos)? }).is_some() {
                return Err(Error::InvalidCurve(format!("vertex {} repeats", v.id)));
            }
        }
        for e in &self.edges {
            let edge = Edge { id: e.id, v: e.v, w: e.w, length: e.length.get()?, slope: e.slope };
            if c.edges.insert(e.id, edge).is_some() {
                return Err(Error::InvalidCurve(format!("edge {} repeats", e.id)));
            }
        }
        c.legs = self.legs.iter().map(LegDto::get).collect();
        Ok(c)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeEdgeDto {
    pub id: usize,
    pub v: usize,
    pub w: usize,
    pub slope: IVec,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeDto {
    /// Vertex id to weight.
    pub vertices: BTreeMap<usize, u32>,
    pub edges: Vec<TypeEdgeDto>,
    pub legs: Vec<LegDto>,
}

impl TypeDto {
    pub fn of(t: &CombinatorialType) -> Self {
        TypeDto {
            vertices: t.vertices.clone(),
            edges: t.edges.iter().map(|(&id, e)| TypeEdgeDto { id, v: e.v, w: e.w, slope: e.slope }).collect(),
            legs: t.legs.iter().map(LegDto::of).collect(),
        }
    }

    pub fn get(&self) -> CombinatorialType {
        CombinatorialType {
            vertices: self.vertices.clone(),
            edges: self.edges.iter().map(|e| (e.id, TypeEdge { v: e.v, w: e.w, slope: e.slope })).collect(),
            legs: self.legs.iter().map(LegDto::get).collect(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GermDto {
    Edge { id: usize, tail: bool },
    Leg { id: usize },
}

impl GermDto {
    fn of(g: &Germ) -> Self {
        match *g {
            Germ::Edge(id, tail) => GermDto::Edge { id, tail },
            Germ::Leg(id) => GermDto::Leg { id },
        }
    }

    fn get(&self) -> Germ {
        match *self {
            GermDto::Edge { id, tail } => Germ::Edge(id, tail),
            GermDto::Leg { id } => Germ::Leg(id),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "move", rename_all = "snake_case")]
pub enum MoveDto {
    TranslateFloor { floor: usize, marks: Vec<usize>, dy: Rat },
    TranslateElevator { elevator: usize, dx: Rat },
    CrossSimpleWall { vertex: usize, split: Vec<GermDto>, amount: Rat },
    SplitFourValent { vertex: usize, pairing: Vec<GermDto>, amount: Rat },
    ShrinkFlattenedCycle { bottom: usize, top: usize, amount: Rat },
    DevelopContractedLoop { vertex: usize },
    DevelopEllipticTail { vertex: usize },
    StretchToLimit { edge: usize },
}

fn germs(g: &[Germ]) -> Vec<GermDto> {
    g.iter().map(GermDto::of).collect()
}

fn ungerms(g: &[GermDto]) -> Vec<Germ> {
    g.iter().map(GermDto::get).collect()
}

impl MoveDto {
    pub fn of(m: &Move) -> Self {
        match m {
            Move::TranslateFloor { floor, marks, dy } => {
                MoveDto::TranslateFloor { floor: *floor, marks: marks.clone(), dy: Rat::of(dy) }
            }
            Move::TranslateElevator { elevator, dx } => MoveDto::TranslateElevator { elevator: *elevator, dx: Rat::of(dx) },
            Move::CrossSimpleWall { vertex, split, amount } => {
                MoveDto::CrossSimpleWall { vertex: *vertex, split: germs(split), amount: Rat::of(amount) }
            }
            Move::SplitFourValent { vertex, pairing, amount } => {
                MoveDto::SplitFourValent { vertex: *vertex, pairing: germs(pairing), amount: Rat::of(amount) }
            }
            Move::ShrinkFlattenedCycle { bottom, top, amount } => {
                MoveDto::ShrinkFlattenedCycle { bottom: *bottom, top: *top, amount: Rat::of(amount) }
            }
            Move::DevelopContractedLoop { vertex } => MoveDto::DevelopContractedLoop { vertex: *vertex },
            Move::DevelopEllipticTail { vertex } => MoveDto::DevelopEllipticTail { vertex: *vertex },
            Move::StretchToLimit { edge } => MoveDto::StretchToLimit { edge: *edge },
        }
    }

    pub fn get(&self) -> Result<Move> {
        Ok(match self {
            MoveDto::TranslateFloor { floor, marks, dy } => {
                Move::TranslateFloor { floor: *floor, marks: marks.clone(), dy: dy.get()? }
            }
            MoveDto::TranslateElevator { elevator, dx } => Move::TranslateElevator { elevator: *elevator, dx: dx.get()? },
            MoveDto::CrossSimpleWall { vertex, split, amount } => {
                Move::CrossSimpleWall { vertex: *vertex, split: ungerms(split), amount: amount.get()? }
            }
            MoveDto::SplitFourValent { vertex, pairing, amount } => {
                Move::SplitFourValent { vertex: *vertex, pairing: ungerms(pairing), amount: amount.get()? }
            }
            MoveDto::ShrinkFlattenedCycle { bottom, top, amount } => {
                Move::ShrinkFlattenedCycle { bottom: *bottom, top: *top, amount: amount.get()? }
            }
            MoveDto::DevelopContractedLoop { vertex } => Move::DevelopContractedLoop { vertex: *vertex },
            MoveDto::DevelopEllipticTail { vertex } => Move::DevelopEllipticTail { vertex: *vertex },
            MoveDto::StretchToLimit { edge } => Move::StretchToLimit { edge: *edge },
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepDto {
    #[serde(rename = "move")]
    pub mv: MoveDto,
    #[serde(rename = "type")]
    pub ty: TypeDto,
    pub evaluations: Vec<[Rat; 2]>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CaseDto {
    OppositeEqual,
    ComplexityTwo,
}

impl CaseDto {
    pub fn of(c: ReductionCase) -> Self {
        match c {
            ReductionCase::OppositeEqual => CaseDto::OppositeEqual,
            ReductionCase::ComplexityTwo => CaseDto::ComplexityTwo,
        }
    }

    pub fn get(self) -> ReductionCase {
        match self {
            CaseDto::OppositeEqual => ReductionCase::OppositeEqual,
            CaseDto::ComplexityTwo => ReductionCase::ComplexityTwo,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "terminal", rename_all = "snake_case")]
pub enum TerminalDto {
    Stretched,
    TwoElevators { e: usize, e_prime: usize, case: CaseDto },
    Restart { complexity_before: usize, complexity_after: usize, remarked: CurveDto },
    Ray { edge: usize, case: CaseDto, kappa: Option<u64>, reduced: CurveDto },
}

impl TerminalDto {
    pub fn of(t: &Terminal) -> Self {
        match t {
            Terminal::Stretched => TerminalDto::Stretched,
            Terminal::TwoElevators { e, e_prime, case } => {
                TerminalDto::TwoElevators { e: *e, e_prime: *e_prime, case: CaseDto::of(*case) }
            }
            Terminal::Restart { complexity_before, complexity_after, remarked } => TerminalDto::Restart {
                complexity_before: *complexity_before,
                complexity_after: *complexity_after,
                remarked: CurveDto::of(remarked),
            },
            Terminal::Ray { edge, case, kappa, reduced } => {
                TerminalDto::Ray { edge: *edge, case: CaseDto::of(*case), kappa: *kappa, reduced: CurveDto::of(reduced) }
            }
        }
    }

    pub fn get(&self) -> Result<Terminal> {
        Ok(match self {
            TerminalDto::Stretched => Terminal::Stretched,
            TerminalDto::TwoElevators { e, e_prime, case } => {
                Terminal::TwoElevators { e: *e, e_prime: *e_prime, case: case.get() }
            }
            TerminalDto::Restart { complexity_before, complexity_after, remarked } => Terminal::Restart {
                complexity_before: *complexity_before,
                complexity_after: *complexity_after,
                remarked: remarked.get()?,
            },
            TerminalDto::Ray { edge, case, kappa, reduced } => {
                Terminal::Ray { edge: *edge, case: case.get(), kappa: *kappa, reduced: reduced.get()? }
            }
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReleasedDto {
    pub leg: usize,
    pub pos: [Rat; 2],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateDto {
    pub initial: CurveDto,
    pub fixed: Vec<usize>,
    pub released: Option<ReleasedDto>,
    pub characteristic: u64,
    pub threshold: Rat,
    pub steps: Vec<StepDto>,
    #[serde(flatten)]
    pub terminal: TerminalDto,
}

impl CertificateDto {
    pub fn of(c: &MoveCertificate) -> Self {
        CertificateDto {
            initial: CurveDto::of(&c.initial),
            fixed: c.fixed.clone(),
            released: c.released.as_ref().map(|(leg, pos)| ReleasedDto { leg: *leg, pos: pair(pos) }),
            characteristic: c.characteristic,
            threshold: Rat::of(&c.threshold),
            steps: c
                .steps
                .iter()
                .map(|s| StepDto {
                    mv: MoveDto::of(&s.mv),
                    ty: TypeDto::of(&s.ty),
                    evaluations: s.evaluations.iter().map(pair).collect(),
                })
                .collect(),
            terminal: TerminalDto::of(&c.terminal),
        }
    }

    pub fn get(&self) -> Result<MoveCertificate> {
        let steps = self
            .steps
            .iter()
            .map(|s| {
                Ok(CertificateStep {
                    mv: s.mv.get()?,
                    ty: s.ty.get(),
                    evaluations: s.evaluations.iter().map(unpair).collect::<Result<_>>()?,
                })
            })
            .collect::<Result<_>>()?;
        Ok(MoveCertificate {
            initial: self.initial.get()?,
            fixed: self.fixed.clone(),
            released: match &self.released {
                Some(r) => Some((r.leg, unpair(&r.pos)?)),
                None => None,
            },
            characteristic: self.characteristic,
            threshold: self.threshold.get()?,
            steps,
            terminal: self.terminal.get()?,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorDto {
    pub kind: String,
    pub message: String,
    pub gate: bool,
}

impl ErrorDto {
    pub fn of(e: &Error) -> Self {
        let debug = format!("{e:?}");
        let kind = debug.split(|c: char| !c.is_alphanumeric()).next().unwrap_or_default().to_string();
        ErrorDto { kind, message: e.to_string(), gate: e.is_gate() }
    }
}
