#pragma once

// Hand-transcribed expected programs. Labels are deliberately unlike the
// ones the library invents, so comparisons go through rename_equal.

#include <string>

namespace goldens {

// The counting loop after extracting <C1, C2, C3^c> on the one-point domain.
inline const std::string kCountingExtracted = R"(#entry L0
L0: x := 0 -> L1
L1: guard onepoint {} -> l0
L1: !guard onepoint {} -> Lbar
Lbar: (x <= 20) -> L2
Lbar: !(x <= 20) -> L5
l0: (x <= 20) -> m1
l0: !(x <= 20) -> L5
m1: guard onepoint {} -> l1
m1: !guard onepoint {} -> L2
l1: x := x + 1 -> m2
m2: guard onepoint {} -> l2
m2: !guard onepoint {} -> L3
l2: !(x % 3 = 0) -> L1
l2: (x % 3 = 0) -> L4
L2: x := x + 1 -> L3
L3: (x % 3 = 0) -> L4
L3: !(x % 3 = 0) -> L1
L4: x := x + 3 -> L1
L5: skip -> .
)";

// ... followed by the nested extraction of <H0, H5^c, C4>.
inline const std::string kCountingNested = R"(#entry L0
L0: x := 0 -> L1
L1: guard onepoint {} -> l0
L1: !guard onepoint {} -> Lbar
Lbar: (x <= 20) -> L2
Lbar: !(x <= 20) -> L5
l0: (x <= 20) -> m1
l0: !(x <= 20) -> L5
m1: guard onepoint {} -> l1
m1: !guard onepoint {} -> L2
l1: x := x + 1 -> m2
m2: guard onepoint {} -> l2
m2: !guard onepoint {} -> L3
l2: !(x % 3 = 0) -> L1
l2: (x % 3 = 0) -> n2
n2: guard onepoint {} -> k2
n2: !guard onepoint {} -> L4
k2: x := x + 3 -> L1
L2: x := x + 1 -> L3
L3: (x % 3 = 0) -> L4
L3: !(x % 3 = 0) -> L1
L4: x := x + 3 -> L1
L5: skip -> .
)";

// Sieve after the first typed extraction (inner loop).
inline const std::string kSieveP1 = R"(#entry L0
L0: i := 2 -> L1
L1: (i < 100) -> L2
L1: !(i < 100) -> L8
L2: (primes[i] = tt) -> L3
L2: !(primes[i] = tt) -> L7
L3: k := i + i -> L4
L5: primes[k] := ff -> L6
L6: k := k + i -> L4
L7: i := i + 1 -> L1
L8: skip -> .
B4: (k < 100) -> L5
B4: !(k < 100) -> L7
L4: guard type {i: Int, k: Int, primes: Bool[]} -> e0
L4: !guard type {i: Int, k: Int, primes: Bool[]} -> B4
e0: (k < 100) -> f1
e0: !(k < 100) -> L7
f1: guard type {i: Int, k: Int, primes: Bool[]} -> e1
f1: !guard type {i: Int, k: Int, primes: Bool[]} -> L5
e1: primes[k] := ff -> f2
f2: guard type {i: Int, k: Int, primes: Bool[]} -> e2
f2: !guard type {i: Int, k: Int, primes: Bool[]} -> L6
e2: k := k +Int i -> L4
)";

// Second round: the outer loop with the inner path nested.
inline const std::string kSieveP2 = R"(#entry L0
L0: i := 2 -> L1
L2: (primes[i] = tt) -> L3
L2: !(primes[i] = tt) -> L7
L3: k := i + i -> L4
L5: primes[k] := ff -> L6
L6: k := k + i -> L4
L7: i := i + 1 -> L1
L8: skip -> .
B4: (k < 100) -> L5
B4: !(k < 100) -> L7
L4: guard type {i: Int, k: Int, primes: Bool[]} -> e0
L4: !guard type {i: Int, k: Int, primes: Bool[]} -> B4
e0: (k < 100) -> f1
e0: !(k < 100) -> q3
f1: guard type {i: Int, k: Int, primes: Bool[]} -> e1
f1: !guard type {i: Int, k: Int, primes: Bool[]} -> L5
e1: primes[k] := ff -> f2
f2: guard type {i: Int, k: Int, primes: Bool[]} -> e2
f2: !guard type {i: Int, k: Int, primes: Bool[]} -> L6
e2: k := k +Int i -> L4
B1: (i < 100) -> L2
B1: !(i < 100) -> L8
L1: guard type {i: Int, k: Int, primes: Bool[]} -> p0
L1: !guard type {i: Int, k: Int, primes: Bool[]} -> B1
p0: (i < 100) -> q1
p0: !(i < 100) -> L8
q1: guard type {i: Int, k: Int, primes: Bool[]} -> p1
q1: !guard type {i: Int, k: Int, primes: Bool[]} -> L2
p1: (primes[i] = tt) -> q2
p1: !(primes[i] = tt) -> L7
q2: guard type {i: Int, k: Int, primes: Bool[]} -> p2
q2: !guard type {i: Int, k: Int, primes: Bool[]} -> L3
p2: k := i +Int i -> L4
q3: guard type {i: Int, k: Int, primes: Bool[]} -> p3
q3: !guard type {i: Int, k: Int, primes: Bool[]} -> L7
p3: i := i +Int 1 -> L1
)";

// Third round: the composite-number path through the outer stitch.
inline const std::string kSieveP3 = R"(#entry L0
L0: i := 2 -> L1
L2: (primes[i] = tt) -> L3
L2: !(primes[i] = tt) -> L7
L3: k := i + i -> L4
L5: primes[k] := ff -> L6
L6: k := k + i -> L4
L7: i := i + 1 -> L1
L8: skip -> .
B4: (k < 100) -> L5
B4: !(k < 100) -> L7
L4: guard type {i: Int, k: Int, primes: Bool[]} -> e0
L4: !guard type {i: Int, k: Int, primes: Bool[]} -> B4
e0: (k < 100) -> f1
e0: !(k < 100) -> q3
f1: guard type {i: Int, k: Int, primes: Bool[]} -> e1
f1: !guard type {i: Int, k: Int, primes: Bool[]} -> L5
e1: primes[k] := ff -> f2
f2: guard type {i: Int, k: Int, primes: Bool[]} -> e2
f2: !guard type {i: Int, k: Int, primes: Bool[]} -> L6
e2: k := k +Int i -> L4
B1: (i < 100) -> L2
B1: !(i < 100) -> L8
L1: guard type {i: Int, k: Int, primes: Bool[]} -> p0
L1: !guard type {i: Int, k: Int, primes: Bool[]} -> B1
p0: (i < 100) -> q1
p0: !(i < 100) -> L8
q1: guard type {i: Int, k: Int, primes: Bool[]} -> p1
q1: !guard type {i: Int, k: Int, primes: Bool[]} -> L2
p1: (primes[i] = tt) -> q2
p1: !(primes[i] = tt) -> r2
r2: guard type {i: Int, k: Int, primes: Bool[]} -> s2
r2: !guard type {i: Int, k: Int, primes: Bool[]} -> L7
s2: i := i +Int 1 -> L1
q2: guard type {i: Int, k: Int, primes: Bool[]} -> p2
q2: !guard type {i: Int, k: Int, primes: Bool[]} -> L3
p2: k := i +Int i -> L4
q3: guard type {i: Int, k: Int, primes: Bool[]} -> p3
q3: !guard type {i: Int, k: Int, primes: Bool[]} -> L7
p3: i := i +Int 1 -> L1
)";

// Constant folding along <C2, C3, C4> with a fixed at 2.
inline const std::string kFolded = R"(#entry L0
L0: x := 0 -> L1
L1: a := 2 -> L2
B2: (x <= 15) -> L3
B2: !(x <= 15) -> L7
L2: guard cp {a: 2, x: top} -> e0
L2: !guard cp {a: 2, x: top} -> B2
e0: (x <= 15) -> f1
e0: !(x <= 15) -> L7
f1: guard cp {a: 2, x: top} -> e1
f1: !guard cp {a: 2, x: top} -> L3
e1: (x <= 5) -> f2
e1: !(x <= 5) -> L5
f2: guard cp {a: 2, x: top} -> e2
f2: !guard cp {a: 2, x: top} -> L4
e2: x := x + 2 -> L2
L3: (x <= 5) -> L4
L3: !(x <= 5) -> L5
L4: x := x + a -> L2
L5: a := a + 1 -> L6
L6: x := x + a -> L2
L7: skip -> .
)";

// Compilation of  x := 0; while B1 do x := 1; x := 2; bail B2 to x := 3; x := 4
// with B1 = (x <= 0), B2 = (x = 2).
inline const std::string kCompiled = R"(#entry lS
lS: x := 0 -> lw
lw: skip -> liw
liw: (x <= 0) -> l1
liw: !(x <= 0) -> l2
l1: x := 1 -> lw
l2: x := 2 -> lb
lb: (x = 2) -> l3
lb: !(x = 2) -> l4
l3: x := 3 -> le
l4: x := 4 -> le
le: skip -> .
)";

// Compilation of the counting loop as a while-program.
inline const std::string kCompiledLoop = R"(#entry lw
lw: skip -> liw
liw: (x <= 20) -> l1
liw: !(x <= 20) -> le
l1: x := x + 1 -> lif
lif: (x % 3 = 0) -> l2
lif: !(x % 3 = 0) -> lw
l2: x := x + 3 -> lw
le: skip -> .
)";

inline const std::string kLoopGp =
    "while (x <= 20) do { x := x + 1; if (x % 3 = 0) then { x := x + 3; } }";

inline const std::string kLoopTrace =
    "x := x + 1; bail (x % 3 = 0) to { x := x + 3; "
    "while (x <= 20) do { x := x + 1; if (x % 3 = 0) then { x := x + 3; } } }";

}  // namespace goldens
