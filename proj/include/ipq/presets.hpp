#pragma once

#include <map>
#include <string>

namespace ipq {

// Figure presets. Dynamics presets use G_k = 1; thermalization presets use Gamma = 1.
inline const std::map<std::string, std::string>& presets() {
  static const std::map<std::string, std::string> p{
      {"fig1a", R"({
  "name": "fig1a",
  "kind": "collective",
  "units": "G",
  "description": "Collective bath, excitation numbers during storage, with and without the LEO train",
  "defaults": {
    "duration": 3.141592653589793,
    "gate": {"type": "storage"},
    "spectrum": {"Gamma": 5, "gamma": 0.5, "Omega": 100},
    "omega0": 100,
    "beta": 0.01,
    "initial": {"alpha0": 0.7071067811865476, "alpha1": 0.7071067811865476}
  },
  "runs": [
    {"name": "fig1a_no_leo"},
    {"name": "fig1a_leo", "leo": {"strength": 50, "width": 0.06283185307179587, "spacing": 0.015707963267948967}}
  ]
})"},
      {"fig1b", R"({
  "name": "fig1b",
  "kind": "collective",
  "units": "G",
  "description": "Collective bath, storage infidelity with and without LEO, plus the decoherence-free a0 state at two temperatures",
  "defaults": {
    "duration": 3.141592653589793,
    "gate": {"type": "storage"},
    "spectrum": {"Gamma": 5, "gamma": 0.5, "Omega": 100},
    "omega0": 100,
    "beta": 0.01,
    "initial": {"alpha0": 0.7071067811865476, "alpha1": 0.7071067811865476}
  },
  "runs": [
    {"name": "fig1b_no_leo"},
    {"name": "fig1b_leo", "leo": {"strength": 50, "width": 0.06283185307179587, "spacing": 0.015707963267948967}},
    {"name": "fig1b_dfs_beta1", "initial": {"alpha0": -0.7071067811865476, "alpha1": 0.7071067811865476}},
    {"name": "fig1b_dfs_beta10", "beta": 0.1, "initial": {"alpha0": -0.7071067811865476, "alpha1": 0.7071067811865476}}
  ]
})"},
      {"fig1c", R"({
  "name": "fig1c",
  "kind": "collective",
  "units": "G",
  "description": "Collective bath, Z-gate infidelity with and without LEO",
  "defaults": {
    "duration": 3.141592653589793,
    "gate": {"type": "z", "strength": 1},
    "spectrum": {"Gamma": 5, "gamma": 0.5, "Omega": 100},
    "omega0": 100,
    "beta": 0.01,
    "initial": {"alpha0": 0.7071067811865476, "alpha1": 0.7071067811865476}
  },
  "runs": [
    {"name": "fig1c_no_leo"},
    {"name": "fig1c_leo", "leo": {"strength": 50, "width": 0.06283185307179587, "spacing": 0.015707963267948967}}
  ]
})"},
      {"fig1d", R"({
  "name": "fig1d",
  "kind": "collective",
  "units": "G",
  "description": "Collective bath, X-gate infidelity with and without LEO",
  "defaults": {
    "duration": 3.141592653589793,
    "gate": {"type": "x", "strength": 1},
    "spectrum": {"Gamma": 5, "gamma": 0.5, "Omega": 100},
    "omega0": 100,
    "beta": 0.01,
    "initial": {"alpha0": 0.7071067811865476, "alpha1": 0.7071067811865476}
  },
  "runs": [
    {"name": "fig1d_no_leo"},
    {"name": "fig1d_leo", "leo": {"strength": 50, "width": 0.06283185307179587, "spacing": 0.015707963267948967}}
  ]
})"},
      {"fig2a", R"({
  "name": "fig2a",
  "kind": "thermalization",
  "units": "Gamma",
  "description": "Excitation numbers from c0 on the vacuum, collective and individual (RWA) baths, zero and finite temperature",
  "defaults": {
    "duration": 10,
    "initial": {"alpha0": 1, "alpha1": 0}
  },
  "runs": [
    {"name": "fig2a_collective_T0", "model": "collective", "spectrum": {"Gamma": 1, "gamma": 2.5, "Omega": 100}, "omega0": 100},
    {"name": "fig2a_collective_T50", "model": "collective", "spectrum": {"Gamma": 1, "gamma": 2.5, "Omega": 100}, "omega0": 100,
     "temperature": 50},
    {"name": "fig2a_individual_T0", "model": "individual", "rwa": true, "spectra": {"Gamma": 1, "gamma": 2.5, "Omega": 100},
     "omega0_pair": [100, 100]},
    {"name": "fig2a_individual_T50", "model": "individual", "rwa": true, "spectra": {"Gamma": 1, "gamma": 2.5, "Omega": 100},
     "omega0_pair": [100, 100], "temperatures": [50, 50]}
  ]
})"},
      {"fig2b", R"({
  "name": "fig2b",
  "kind": "thermalization",
  "units": "Gamma",
  "description": "Steady-state excitation numbers against temperature 1/beta, collective and individual (RWA) baths",
  "defaults": {
    "steady": true,
    "initial": {"alpha0": 1, "alpha1": 0}
  },
  "runs": [
    {"name": "fig2b_collective", "model": "collective", "spectrum": {"Gamma": 1, "gamma": 2.5, "Omega": 100}, "omega0": 100},
    {"name": "fig2b_individual", "model": "individual", "rwa": true, "spectra": {"Gamma": 1, "gamma": 2.5, "Omega": 100},
     "omega0_pair": [100, 100]}
  ],
  "sweep": {"axis": "temperature", "values": [0, 25, 50, 75, 100, 125, 150, 175, 200]}
})"},
      {"fig3a", R"({
  "name": "fig3a",
  "kind": "individual",
  "units": "G",
  "description": "Individual baths beyond RWA at equal temperatures, gate infidelity with and without LEO",
  "defaults": {
    "duration": 3.141592653589793,
    "spectra": {"Gamma": 5, "gamma": 0.5, "Omega": 100},
    "omega0_pair": [100, 100],
    "betas": [0.001, 0.001],
    "initial": {"alpha0": 0.7071067811865476, "alpha1": 0.7071067811865476}
  },
  "runs": [
    {"name": "fig3a_storage_no_leo", "gate": {"type": "storage"}},
    {"name": "fig3a_storage_leo", "gate": {"type": "storage"},
     "leo": {"strength": 80, "width": 0.06283185307179587, "spacing": 0.015707963267948967}},
    {"name": "fig3a_x_no_leo", "gate": {"type": "x", "strength": 1}},
    {"name": "fig3a_x_leo", "gate": {"type": "x", "strength": 1},
     "leo": {"strength": 80, "width": 0.06283185307179587, "spacing": 0.015707963267948967}},
    {"name": "fig3a_z_no_leo", "gate": {"type": "z", "strength": 1}},
    {"name": "fig3a_z_leo", "gate": {"type": "z", "strength": 1},
     "leo": {"strength": 80, "width": 0.06283185307179587, "spacing": 0.015707963267948967}}
  ]
})"},
      {"fig3b", R"({
  "name": "fig3b",
  "kind": "individual",
  "units": "G",
  "description": "Individual baths beyond RWA, storage infidelity against the inverse-temperature difference at fixed mean, no LEO",
  "run": {
    "name": "fig3b_storage",
    "duration": 3.141592653589793,
    "gate": {"type": "storage"},
    "spectra": {"Gamma": 5, "gamma": 0.5, "Omega": 100},
    "omega0_pair": [100, 100],
    "betas": [0.001, 0.001],
    "initial": {"alpha0": 0.7071067811865476, "alpha1": 0.7071067811865476}
  },
  "sweep": {"axis": "beta_difference", "values": [-0.0015, -0.001, -0.0005, 0, 0.0005, 0.001, 0.0015]}
})"},
      {"qec", R"({
  "name": "qec",
  "kind": "qec",
  "units": "none",
  "description": "Win-win measurement recovery on random one-particle states and Knill-Laflamme checks",
  "qec": {"epsilon": 0, "cutoff": 4, "trials": 100, "seed": 7}
})"},
  };
  return p;
}

}  // namespace ipq
