"""Candidate final config: misaligned pool + density skew + rejection."""
import sys, time, statistics
sys.path.insert(0, "src")
import numpy as np
from scratch_tune import gen_pool, cell
from vistacrypt.ciphers import simon32, simeck32
from vistacrypt.pools import define_sample
from vistacrypt.search import Technique

simon, simeck = simon32(), simeck32()

for density in [0.625, 0.75]:
    for pool_ini in [(0x0100, 0)]:
        spool = gen_pool(simon, 10, 10000, pool_ini, 42, density)
        ssamp = define_sample(spool, 5.0)
        kpool = gen_pool(simeck, 10, 10000, pool_ini, 42, density)
        ksamp = define_sample(kpool, 5.0)
        pv = float(np.var(spool.c_values())); sv = float(np.var(ssamp.values, ddof=1))
        kpv = float(np.var(kpool.c_values())); ksv = float(np.var(ksamp.values, ddof=1))
        print(f"=== p={density} pool@{pool_ini}: simon pv-sv={pv-sv:+.2e} simeck pv-sv={kpv-ksv:+.2e}")
        t0 = time.perf_counter()
        s = cell(simon, spool, ssamp, (0, 1), 9, 30, 256)
        k = cell(simeck, kpool, ksamp, (0, 1), 10, 28, 256)
        (sbm, sbc), (svm, svc) = s[Technique.BASELINE], s[Technique.VISTA]
        (kbm, kbc), (kvm, kvc) = k[Technique.BASELINE], k[Technique.VISTA]
        print(f"  K=256: SIMON b={sbm:7.0f}({sbc:4.0%}) v={svm:7.0f}({svc:4.0%}) "
              f"r={svm/sbm:5.2f} | SIMECK b={kbm:7.0f}({kbc:4.0%}) v={kvm:7.0f}({kvc:4.0%}) "
              f"r={kvm/kbm:5.2f} | {time.perf_counter()-t0:.0f}s")
