#!/usr/bin/env python3
# Copyright 2026 The wamsplan Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Solves an LP-format model with HiGHS and writes its solution file.

Usage: highs_solve.py MODEL.lp SOLUTION.sol [TIME_LIMIT_SECONDS]

Intended as a delegation template for wamsplan:
  --delegate 'python3 tools/highs_solve.py {lp} {sol}'
"""

import sys

import highspy


def main(argv):
    if len(argv) not in (3, 4):
        sys.stderr.write(__doc__)
        return 1
    h = highspy.Highs()
    h.setOptionValue("output_flag", False)
    h.setOptionValue("threads", 1)
    h.setOptionValue("mip_rel_gap", 0.0)
    h.setOptionValue("mip_abs_gap", 0.0)
    if len(argv) == 4:
        h.setOptionValue("time_limit", float(argv[3]))
    if h.readModel(argv[1]) != highspy.HighsStatus.kOk:
        sys.stderr.write(f"cannot read {argv[1]}\n")
        return 1
    h.run()
    h.writeSolution(argv[2], 0)
    return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv))
