#pragma once

namespace fdode::builtin_text {

inline constexpr const char* paper_example = R"toml(# Two-dimensional dissipative test problem with exact solution (sin t, cos t).
name = "paper_example"
dim = 2
t0 = 0.0
u0 = [0.0, 1.0]
phi = ["2 * sin(t) - 0.5 * sin(2 * t) + cos(t)",
       "2 * cos(t) - 0.5 * sin(2 * t) - sin(t)"]
exact = ["sin(t)", "cos(t)"]

# N(t, u) = -E + u1 diag(0, 1) + u2 diag(1, 0) - (u1^2 + u2^2) E
[[term]]
powers = [0, 0]
matrix = [["-1", "0"],
          ["0", "-1"]]

[[term]]
powers = [1, 0]
matrix = [["0", "0"],
          ["0", "1"]]

[[term]]
powers = [0, 1]
matrix = [["1", "0"],
          ["0", "0"]]

[[term]]
powers = [2, 0]
matrix = [["-1", "0"],
          ["0", "-1"]]

[[term]]
powers = [0, 2]
matrix = [["-1", "0"],
          ["0", "-1"]]
)toml";

inline constexpr const char* linear_decay = R"toml(# u' = -diag(1, 2) u, decoupled exponential decay.
name = "linear_decay"
dim = 2
t0 = 0.0
u0 = [1.0, 1.0]
phi = ["0", "0"]
exact = ["exp(-t)", "exp(-2 * t)"]

[[term]]
powers = [0, 0]
matrix = [["-1", "0"],
          ["0", "-2"]]
)toml";

inline constexpr const char* cubic_1d = R"toml(# u' = -(1 + u^2) u + phi(t), exact solution cos t.
name = "cubic_1d"
dim = 1
t0 = 0.0
u0 = [1.0]
phi = ["-sin(t) + cos(t) + pow(cos(t), 3)"]
exact = ["cos(t)"]

[[term]]
powers = [0]
matrix = [["-1"]]

[[term]]
powers = [2]
matrix = [["-1"]]
)toml";

}  // namespace fdode::builtin_text
