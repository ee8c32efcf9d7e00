# Copyright 2026 The dpcirc Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""End-to-end checks of the dpcirc command line. Usage: cli_test.py BINARY DATA_DIR"""

import csv
import json
import os
import subprocess
import sys
import tempfile
import unittest

BIN = sys.argv[1] if len(sys.argv) > 1 else "dpcirc"
DATA = sys.argv[2] if len(sys.argv) > 2 else "data"


def run(*args, cwd=None):
    return subprocess.run([BIN, *map(str, args)], cwd=cwd, capture_output=True, text=True)


def rows(path):
    with open(path, newline="") as f:
        return list(csv.DictReader(f))


class Cli(unittest.TestCase):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.dir = self.tmp.name

    def tearDown(self):
        self.tmp.cleanup()

    def path(self, name):
        return os.path.join(self.dir, name)

    def test_decay_row_count_manifest_and_determinism(self):
        flags = ["--n", 40, "--p", 0.081, "--q", 0, "--h", 0, "--depth", 400, "--realizations", 50, "--seed", 7]
        r = run("decay", *flags, "--out", self.path("a.csv"))
        self.assertEqual(r.returncode, 0, r.stderr)
        data = rows(self.path("a.csv"))
        self.assertEqual(len(data), 401)
        with open(self.path("a.csv")) as f:
            self.assertEqual(f.readline().strip(), "t,s_mean,s_stderr,n,p,q,h,realizations,seed")
        m = json.load(open(self.path("a.manifest.json")))
        for key in ("config", "seed", "subcommand", "version", "duration_s"):
            self.assertIn(key, m)
        self.assertEqual(m["seed"], 7)
        self.assertEqual(m["subcommand"], "decay")
        self.assertEqual(m["config"]["n"], 40)
        run("decay", *flags, "--threads", 3, "--out", self.path("b.csv"))
        self.assertEqual(open(self.path("a.csv"), "rb").read(), open(self.path("b.csv"), "rb").read())

    def test_manifest_alone_reproduces_output(self):
        run("decay", "--n", 12, "--p", 0.1, "--depth", 40, "--realizations", 9, "--out", self.path("a.csv"))
        m = json.load(open(self.path("a.manifest.json")))
        c = m["config"]
        r = run("decay", "--n", c["n"], "--p", c["p"], "--q", c["q"], "--h", c["h"], "--depth", c["depth"],
                "--realizations", c["realizations"], "--seed", m["seed"], "--out", self.path("b.csv"))
        self.assertEqual(r.returncode, 0, r.stderr)
        self.assertEqual(open(self.path("a.csv"), "rb").read(), open(self.path("b.csv"), "rb").read())

    def test_usage_errors_leave_no_files(self):
        r = run("decay", "--n", 41, "--out", self.path("bad.csv"))
        self.assertEqual(r.returncode, 1)
        self.assertIn("even", r.stderr)
        self.assertFalse(os.path.exists(self.path("bad.csv")))
        self.assertFalse(os.path.exists(self.path("bad.manifest.json")))
        self.assertEqual(run("decay", "--n", 4).returncode, 1)
        self.assertEqual(run("frobnicate").returncode, 1)
        self.assertEqual(run("decay", "--n", 4, "--p", 2, "--out", self.path("x.csv")).returncode, 1)
        self.assertEqual(run("mi", "--n", 6, "--out", self.path("m.csv")).returncode, 1)
        self.assertFalse(os.path.exists(self.path("m.csv")))

    def test_runtime_error_exit_code(self):
        r = run("decay", "--n", 4, "--depth", 3, "--realizations", 2, "--out", "/nonexistent/dir/x.csv")
        self.assertEqual(r.returncode, 3)

    def test_sweep_grid(self):
        r = run("sweep", "--n-list", "8,12,16", "--p-list", "0.05,0.1,0.2,0.3,0.5,0.7,1", "--realizations", 20,
                "--bootstrap", 10, "--depth-coeff", 1, "--seed", 1, "--out", self.path("s.csv"))
        self.assertEqual(r.returncode, 0, r.stderr)
        data = rows(self.path("s.csv"))
        self.assertEqual(len(data), 21)
        self.assertEqual(list(data[0].keys()),
                         ["n", "p", "tau_mean", "tau_stderr", "censored_fraction", "realizations", "seed"])
        for row in data:
            if float(row["p"]) == 1.0:
                self.assertLessEqual(float(row["tau_mean"]), 1.0)
        with open(self.path("s.manifest.json")) as f:
            results = json.load(f)["results"]
        self.assertEqual(len(results["t0_sensitivity"]), 21)
        self.assertIn("tau_2t0", results["t0_sensitivity"][0])
        self.assertTrue("crossing_2t0" in results or "crossing_2t0_error" in results)

    def test_sweep_deep_coding_phase_censored(self):
        r = run("sweep", "--n-list", "40", "--p-list", "0.005", "--realizations", 20, "--bootstrap", 20,
                "--depth-coeff", 1, "--depth-exponent", 1.2, "--seed", 1, "--out", self.path("s.csv"))
        self.assertEqual(r.returncode, 0, r.stderr)
        self.assertGreaterEqual(float(rows(self.path("s.csv"))[0]["censored_fraction"]), 0.9)

    def test_phase_diagram_grid(self):
        r = run("phase-diagram", "--n", 24, "--p-grid", 12, "--q-grid", 8, "--depth", 30, "--realizations", 2,
                "--seed", 3, "--out", self.path("ph.csv"))
        self.assertEqual(r.returncode, 0, r.stderr)
        data = rows(self.path("ph.csv"))
        self.assertEqual(len(data), 96)
        self.assertEqual(list(data[0].keys()),
                         ["n", "p", "q", "timescale_mean", "timescale_stderr", "capped_fraction"])

    def test_dp_mi_perturb_schemas(self):
        self.assertEqual(run("dp", "--n", 16, "--p", 0.1, "--depth", 20, "--trajectories", 10, "--out",
                             self.path("dp.csv")).returncode, 0)
        self.assertEqual(list(rows(self.path("dp.csv"))[0].keys()),
                         ["t", "density_mean", "survival_prob", "qbar_estimate", "qbar_stderr"])
        self.assertEqual(len(rows(self.path("dp.csv"))), 21)
        self.assertEqual(run("mi", "--n", 8, "--p-list", "0,0.1,1", "--realizations", 3, "--out",
                             self.path("mi.csv")).returncode, 0)
        mi = rows(self.path("mi.csv"))
        self.assertEqual(list(mi[0].keys()), ["n", "p", "q", "t_eval", "mi_mean", "mi_stderr"])
        self.assertEqual(float(mi[2]["mi_mean"]), 0.0)
        r = run("perturb", "--n", 8, "--depth", 30, "--values", "0,0.1", "--realizations", 3, "--out",
                self.path("pt.csv"), "--saturation-out", self.path("sat.csv"))
        self.assertEqual(r.returncode, 0, r.stderr)
        self.assertEqual(len(rows(self.path("pt.csv"))), 62)
        self.assertEqual(len(rows(self.path("sat.csv"))), 2)
        m = json.load(open(self.path("pt.manifest.json")))
        self.assertEqual(len(m["results"]["saturation"]), 2)
        self.assertEqual(run("perturb", "--h", 0.1, "--values", "0.1", "--out", self.path("e.csv")).returncode, 1)

    def test_collapse_recovers_planted_exponents(self):
        r = run("collapse", "--in", os.path.join(DATA, "synthetic_sweep.csv"), "--ansatz", "tau",
                "--bounds", "1:2.2,0.5:2.5,0.05:0.12", "--seed", 1, "--out", self.path("c.csv"))
        self.assertEqual(r.returncode, 0, r.stderr)
        e = json.load(open(self.path("c.manifest.json")))["results"]["exponents"]
        self.assertAlmostEqual(e["z"], 1.5, delta=0.05 * 1.5)
        self.assertAlmostEqual(e["nu"], 1.1, delta=0.05 * 1.1)
        self.assertAlmostEqual(e["p_c"], 0.08, delta=0.05 * 0.08)
        r = run("collapse", "--in", os.path.join(DATA, "synthetic_crossover.csv"), "--ansatz", "crossover",
                "--seed", 1, "--out", self.path("x.csv"))
        self.assertEqual(r.returncode, 0, r.stderr)
        e = json.load(open(self.path("x.manifest.json")))["results"]["exponents"]
        self.assertAlmostEqual(e["gamma_over_eta"], 0.32, delta=0.05 * 0.32)
        self.assertAlmostEqual(e["z_over_eta"], 0.675, delta=0.05 * 0.675)
        self.assertEqual(run("collapse", "--in", os.path.join(DATA, "synthetic_sweep.csv"), "--bounds", "1:2",
                             "--out", self.path("y.csv")).returncode, 1)

    def test_missing_seed_is_drawn_and_recorded(self):
        run("decay", "--n", 4, "--depth", 3, "--realizations", 2, "--out", self.path("a.csv"))
        run("decay", "--n", 4, "--depth", 3, "--realizations", 2, "--out", self.path("b.csv"))
        a = json.load(open(self.path("a.manifest.json")))["seed"]
        b = json.load(open(self.path("b.manifest.json")))["seed"]
        self.assertNotEqual(a, b)
        self.assertEqual(rows(self.path("a.csv"))[0]["seed"], str(a))

    def test_config_file_with_flag_override(self):
        with open(self.path("run.cfg"), "w") as f:
            f.write("# decay settings\nn = 16\np = 0.1\ndepth = 50\nrealizations = 5\nseed = 9\n")
        r = run("decay", "--config", self.path("run.cfg"), "--depth", 20, "--out", self.path("k.csv"))
        self.assertEqual(r.returncode, 0, r.stderr)
        self.assertEqual(len(rows(self.path("k.csv"))), 21)
        m = json.load(open(self.path("k.manifest.json")))
        self.assertEqual(m["config"]["n"], 16)
        self.assertEqual(m["seed"], 9)

    def test_verify(self):
        r = run("verify", "--out", self.path("v.csv"))
        self.assertEqual(r.returncode, 0, r.stdout + r.stderr)
        self.assertEqual(r.stdout.count("PASS"), 6)
        self.assertTrue(os.path.exists(self.path("v.manifest.json")))
        r = run("verify", "--qbar-samples", 10)
        self.assertEqual(r.returncode, 2)


if __name__ == "__main__":
    unittest.main(argv=sys.argv[:1])
