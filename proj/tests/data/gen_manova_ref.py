# Copyright 2026 The cabl Authors
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

"""Regenerates manova_refs.inc: an unbalanced 3x3 design and statsmodels' type III
MANOVA (sum-to-zero coding). Hotelling-Lawley F is not compared; statsmodels
uses a different denominator df."""
import numpy as np, pandas as pd
from statsmodels.multivariate.manova import MANOVA
rng = np.random.default_rng(2024)
rows = []
counts = {("B1","outer"):3,("B1","middle"):2,("B1","inner"):4,("B2","outer"):3,("B2","middle"):3,("B2","inner"):2,("B3","outer"):2,("B3","middle"):3,("B3","inner"):3}
shift = {"B1":(0,0),"B2":(0.05,-0.02),"B3":(-0.03,0.04)}
lsh = {"outer":(0.02,0),"middle":(0,0.03),"inner":(-0.01,-0.01)}
for (b,l),n in counts.items():
    for i in range(n):
        y1 = 1.8 + shift[b][0] + lsh[l][0] + 0.04*rng.standard_normal()
        y2 = 0.9 + shift[b][1] + lsh[l][1] + 0.05*rng.standard_normal()
        rows.append((b,l,round(y1,4),round(y2,4)))
df = pd.DataFrame(rows, columns=["b","l","y1","y2"])
res = MANOVA.from_formula("y1 + y2 ~ C(b, Sum) * C(l, Sum)", data=df).mv_test()
out = ["// Generated by gen_manova_ref.py; do not edit.", "inline const Obs kManovaData[] = {"]
out += ['    {"%s", "%s", {%s, %s}},' % r for r in rows]
out.append("};")
out.append("inline const Ref kManovaRefs[] = {")
for term,name in [("C(b, Sum)","bullet"),("C(l, Sum)","location"),("C(b, Sum):C(l, Sum)","interaction")]:
    st = res.results[term]["stat"]
    w = st.loc["Wilks' lambda"]; h = st.loc["Hotelling-Lawley trace"]
    vals = [w["Value"], w["F Value"], w["Num DF"], w["Den DF"], w["Pr > F"], h["Value"]]
    out.append('    {"%s", %s},' % (name, ", ".join(repr(float(v)) for v in vals)))
out.append("};")
import pathlib
pathlib.Path(__file__).with_name("manova_refs.inc").write_text("\n".join(out) + "\n")
