# Copyright 2026 The yule Authors
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

import mpmath as mp
mp.mp.dps = 30
def phiB(s):
    x = mp.sqrt(2*s)
    return (mp.sinh(x)/x)**-0.5 if s > 0 else mp.mpf(1)
for m in (1, 2, 3):
    print('C%d' % m, mp.quad(lambda s: s**(m-1)*phiB(s), [0, 1, 10, 100, 1000, mp.inf]) / mp.factorial(m-1))
def phiBn(n, s):
    lam = [1/(4*n*mp.sin(j*mp.pi/(2*n))**2) for j in range(1, n)]
    return mp.fprod([(1 + 2*s/n*l)**-0.5 for l in lam])
for n in (4, 11, 20, 50):
    print(n, mp.quad(lambda s: phiBn(n, s), [0, 1, 10, 100, 1000, 1e4, 1e5, mp.inf]))
