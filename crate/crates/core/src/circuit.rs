//! Circuit representation: one gate per step, each with targets and
//! control/anticontrol wires.

use alloc::vec::Vec;

use crate::gates::Gate;
use crate::{Error, Result, DEFAULT_MAX_QUBITS};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ControlKind {
    /// Gate acts when the wire is `|1⟩`.
    Control,
    /// Gate acts when the wire is `|0⟩`.
    AntiControl,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Control {
    pub wire: usize,
    pub kind: ControlKind,
}

impl Control {
    pub fn on(wire: usize) -> Self {
        Self {
            wire,
            kind: ControlKind::Control,
        }
    }

    pub fn anti(wire: usize) -> Self {
        Self {
            wire,
            kind: ControlKind::AntiControl,
        }
    }
}

/// Control and anticontrol wires of one gate. No wire appears twice.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ControlSpec {
    entries: Vec<Control>,
}

impl ControlSpec {
    pub fn none() -> Self {
        Self::default()
    }

    pub fn new(entries: Vec<Control>) -> Result<Self> {
        for (i, c) in entries.iter().enumerate() {
            if entries[..i].iter().any(|p| p.wire == c.wire) {
                return Err(Error::ConflictingControl { wire: c.wire });
            }
        }
        Ok(Self { entries })
    }

    /// Shorthand for all-control wires.
    pub fn controls(wires: &[usize]) -> Result<Self> {
        Self::new(wires.iter().map(|&w| Control::on(w)).collect())
    }

    pub fn entries(&self) -> &[Control] {
        &self.entries
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    /// `(inclusionMask, desiredValueMask)`: an amplitude index `i` is acted
    /// on iff `i & inclusion == desired`.
    pub fn masks(&self) -> (usize, usize) {
        let mut inclusion = 0;
        let mut desired = 0;
        for c in &self.entries {
            let bit = 1usize << c.wire;
            inclusion |= bit;
            if c.kind == ControlKind::Control {
                desired |= bit;
            }
        }
        (inclusion, desired)
    }

    /// Checks wire ranges and that no control sits on a target.
    pub fn validate(&self, n: usize, targets: &[usize]) -> Result<()> {
        for c in &self.entries {
            if c.wire >= n {
                return Err(Error::WireOutOfRange { wire: c.wire, n });
            }
            if targets.contains(&c.wire) {
                return Err(Error::ControlOnTarget { wire: c.wire });
            }
        }
        Ok(())
    }

    /// Same controls with every wire passed through `f`.
    pub fn map_wires(&self, mut f: impl FnMut(usize) -> usize) -> Self {
        Self {
            entries: self
                .entries
                .iter()
                .map(|c| Control {
                    wire: f(c.wire),
                    kind: c.kind,
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Operation {
    Gate(Gate),
    Measure,
}

impl Operation {
    pub fn arity(self) -> usize {
        match self {
            Operation::Gate(g) => g.arity(),
            Operation::Measure => 1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Operation::Gate(g) => g.name(),
            Operation::Measure => "MEASURE",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GateOp {
    pub op: Operation,
    pub targets: Vec<usize>,
    pub controls: ControlSpec,
}

impl GateOp {
    pub fn gate(gate: Gate, targets: &[usize], controls: ControlSpec) -> Self {
        Self {
            op: Operation::Gate(gate),
            targets: targets.to_vec(),
            controls,
        }
    }

    pub fn measure(wire: usize) -> Self {
        Self {
            op: Operation::Measure,
            targets: alloc::vec![wire],
            controls: ControlSpec::none(),
        }
    }

    pub fn is_measurement(&self) -> bool {
        self.op == Operation::Measure
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        let arity = self.op.arity();
        if self.targets.len() != arity {
            return Err(Error::ArityMismatch {
                gate: self.op.name(),
                expected: arity,
                got: self.targets.len(),
            });
        }
        for (i, &t) in self.targets.iter().enumerate() {
            if t >= n {
                return Err(Error::WireOutOfRange { wire: t, n });
            }
            if self.targets[..i].contains(&t) {
                return Err(Error::DuplicateTarget { wire: t });
            }
        }
        if self.is_measurement() && !self.controls.is_empty() {
            return Err(Error::MeasurementWithControls);
        }
        self.controls.validate(n, &self.targets)
    }
}

/// A qubit count and an ordered list of single-gate steps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Circuit {
    n: usize,
    ops: Vec<GateOp>,
}

impl Circuit {
    pub fn new(n: usize) -> Result<Self> {
        Self::with_max_qubits(n, DEFAULT_MAX_QUBITS)
    }

    pub fn with_max_qubits(n: usize, max: usize) -> Result<Self> {
        if n > max || n >= usize::BITS as usize {
            return Err(Error::TooManyQubits { n, max });
        }
        Ok(Self { n, ops: Vec::new() })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ops(&self) -> &[GateOp] {
        &self.ops
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    pub fn push(&mut self, op: GateOp) -> Result<&mut Self> {
        op.validate(self.n)?;
        self.ops.push(op);
        Ok(self)
    }

    pub fn gate(&mut self, gate: Gate, targets: &[usize]) -> Result<&mut Self> {
        self.push(GateOp::gate(gate, targets, ControlSpec::none()))
    }

    pub fn controlled(
        &mut self,
        gate: Gate,
        targets: &[usize],
        controls: ControlSpec,
    ) -> Result<&mut Self> {
        self.push(GateOp::gate(gate, targets, controls))
    }

    /// `CX control → target`.
    pub fn cx(&mut self, control: usize, target: usize) -> Result<&mut Self> {
        self.controlled(Gate::X, &[target], ControlSpec::controls(&[control])?)
    }

    pub fn measure(&mut self, wire: usize) -> Result<&mut Self> {
        self.push(GateOp::measure(wire))
    }

    pub fn has_measurements(&self) -> bool {
        self.ops.iter().any(GateOp::is_measurement)
    }

    pub fn measurement_count(&self) -> usize {
        self.ops.iter().filter(|op| op.is_measurement()).count()
    }
}
