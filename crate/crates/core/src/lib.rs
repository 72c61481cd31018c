// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

//! Parallel scheduling of encoded fermionic interactions.
//!
//! A fermionic Hamiltonian is encoded on a system graph whose vertices carry
//! a few qubits each. Every interaction is routed as a path through the
//! graph, interactions whose paths collide are joined in a conflict graph,
//! and a coloring of that graph yields layers of Pauli strings that can be
//! applied at the same time.

pub mod coloring;
pub mod encoding;
pub mod generators;
pub mod graph;
pub mod harness;
pub mod models;
pub mod pauli;
pub mod routing;

pub use coloring::{ConflictGraph, Mode, Schedule};
pub use graph::{SystemGraph, VertexId, VertexKind};
pub use pauli::{Pauli, PauliString, Phase, QubitId};
pub use routing::{Interaction, InteractionId, PathSet, RoutingParams};
