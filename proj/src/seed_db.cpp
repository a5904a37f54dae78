// Copyright 2026 icmc contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "icm/database.hpp"

namespace icm {

// The shipped gate decompositions. Two TGATE/TDAG flavours coexist: the
// 1-ancilla teleportation and the 5-ancilla deterministic form whose
// conditional measurement row (MZX/MXZ) folds the probabilistic P-correction
// into basis choices. TDAG differs from TGATE only by the swapped
// conditional tokens (inverted selector interpretation).
//
// The toffoli grid is the 7-T-count decomposition; columns are time steps,
// rows are qubits, controls listed first. The AA/YY entries are the
// [[15,1,3]] and [[7,1,3]] state distillation circuits: |+> seeds on the
// power-of-two columns, a Bell pair from the output column into the code
// block, the classical-code fanout rows, and the logical-input fanout last.
// MA/MY measurements are rewritten to a teleported rotation plus MX before
// the circuit is final.
static const std::string kSeedDatabase = R"(# icmc seed decomposition database
=TGATE
icm
1
EMPTY AA
c 2 1
MZ EMPTY

=TGATE
icm
5
EMPTY AA ZERO YY PLUS ZERO
c 2 1
c 2 3
c 4 2
c 5 3
c 4 6
c 5 6
MZ MZX MXZ MXZ MZX EMPTY

=TDAG
icm
1
EMPTY AA
c 2 1
MZ EMPTY

=TDAG
icm
5
EMPTY AA ZERO YY PLUS ZERO
c 2 1
c 2 3
c 4 2
c 5 3
c 4 6
c 5 6
MZ MXZ MZX MZX MXZ EMPTY

=PGATE
icm
1
EMPTY YY
c 2 1
MZ EMPTY

=PDAG
icm
1
EMPTY YY
c 2 1
MZ EMPTY

=HGATE
icm
3
EMPTY YY YY YY
c 1 2
c 3 2
c 3 4
MX MZ MX EMPTY

=toffoli
nicm
0
WIRE WIRE WIRE CTRL WIRE WIRE WIRE CTRL WIRE CTRL WIRE CTRL TGATE
WIRE CTRL WIRE WIRE WIRE CTRL WIRE WIRE TGATE TGT TDAG TGT WIRE
HGATE TGT TDAG TGT TGATE TGT TDAG TGT TGATE HGATE WIRE WIRE WIRE

=cv
nicm
0
WIRE TGATE CTRL WIRE CTRL WIRE
HGATE TGATE TGT TDAG TGT HGATE

=cvdag
nicm
0
WIRE TDAG CTRL WIRE CTRL WIRE
HGATE TDAG TGT TGATE TGT HGATE

=cz
nicm
0
WIRE CTRL WIRE CTRL PDAG
ZGATE TGT PGATE TGT PGATE

=MA
nicm
0
TGATE MX

=MY
nicm
0
PGATE MX

=AA
icmdist
15
PLUS PLUS ZERO PLUS ZERO ZERO ZERO PLUS ZERO ZERO ZERO ZERO ZERO ZERO ZERO PLUS
c 16 15
c 1 3 5 7 9 11 13 15
c 2 3 6 7 10 11 14 15
c 4 5 6 7 12 13 14 15
c 8 9 10 11 12 13 14 15
c 15 3 5 6 9 10 12
MA MA MA MA MA MA MA MA MA MA MA MA MA MA MA EMPTY

=YY
icmdist
7
PLUS PLUS ZERO PLUS ZERO ZERO ZERO PLUS
c 8 3
c 1 3 5 7
c 2 3 6 7
c 4 5 6 7
c 3 5 6
MY MY MY MY MY MY MY EMPTY
)";

const std::string& seed_database_text() { return kSeedDatabase; }

}  // namespace icm
