"""Compiled update kernels for the staggered-grid scheme.

Both kernels walk cells (i, j, k) over a half-open slab [i0, i1) of the
x axis so callers can split work across threads; writes are disjoint per
cell and each phase reads only the opposite field family plus the cell
it rewrites, so any slab partition produces identical results.

Out-of-range neighbour reads go through precomputed mirror tables
(xm2..zp2), one entry per axis index and stencil offset.  band_i/band_h
mark z rows (integer / half-offset components) whose 4th-order footprint
would straddle the free surface; those rows fall back to the 2nd-order
stencil.  Vacuum cells keep their velocities pinned to zero.
"""

from numba import njit

# 4th-order tap weights (see stencils.derivative4)
C4A = 9.0 / 8.0
C4B = 1.0 / 24.0


@njit(cache=True, nogil=True)
def velocity_kernel(i0, i1, vx, vy, vz, sxx, syy, szz, sxy, sxz, syz,
                    rho_vx, rho_vy, rho_vz, vac_vx, vac_vy, vac_vz,
                    w, band_i, band_h,
                    xm2, xm1, xp1, xp2, ym2, ym1, yp1, yp2,
                    zm2, zm1, zp1, zp2, dt, dx, dy, dz):
    ny = vx.shape[1]
    nz = vx.shape[2]
    for i in range(i0, i1):
        ixm2 = xm2[i]
        ixm1 = xm1[i]
        ixp1 = xp1[i]
        ixp2 = xp2[i]
        for j in range(ny):
            jym2 = ym2[j]
            jym1 = ym1[j]
            jyp1 = yp1[j]
            jyp2 = yp2[j]
            for k in range(nz):
                kzm2 = zm2[k]
                kzm1 = zm1[k]
                kzp1 = zp1[k]
                kzp2 = zp2[k]
                wc = w[i, j, k]

                # ---- vx at (i+1/2, j, k) --------------------------------
                if vac_vx[i, j, k]:
                    vx[i, j, k] = 0.0
                else:
                    if band_i[k]:
                        d_sxx = (sxx[ixp1, j, k] - sxx[i, j, k]) / dx
                        d_sxy = (sxy[i, j, k] - sxy[i, jym1, k]) / dy
                        d_sxz = (sxz[i, j, k] - sxz[i, j, kzm1]) / dz
                    else:
                        d_sxx = (C4A * (sxx[ixp1, j, k] - sxx[i, j, k])
                                 - C4B * (sxx[ixp2, j, k] - sxx[ixm1, j, k])) / dx
                        d_sxy = (C4A * (sxy[i, j, k] - sxy[i, jym1, k])
                                 - C4B * (sxy[i, jyp1, k] - sxy[i, jym2, k])) / dy
                        d_sxz = (C4A * (sxz[i, j, k] - sxz[i, j, kzm1])
                                 - C4B * (sxz[i, j, kzp1] - sxz[i, j, kzm2])) / dz
                    vx[i, j, k] = (vx[i, j, k] + dt / rho_vx[i, j, k]
                                   * (d_sxx + d_sxy + d_sxz)) * wc

                # ---- vy at (i, j+1/2, k) --------------------------------
                if vac_vy[i, j, k]:
                    vy[i, j, k] = 0.0
                else:
                    if band_i[k]:
                        d_sxy = (sxy[i, j, k] - sxy[ixm1, j, k]) / dx
                        d_syy = (syy[i, jyp1, k] - syy[i, j, k]) / dy
                        d_syz = (syz[i, j, k] - syz[i, j, kzm1]) / dz
                    else:
                        d_sxy = (C4A * (sxy[i, j, k] - sxy[ixm1, j, k])
                                 - C4B * (sxy[ixp1, j, k] - sxy[ixm2, j, k])) / dx
                        d_syy = (C4A * (syy[i, jyp1, k] - syy[i, j, k])
                                 - C4B * (syy[i, jyp2, k] - syy[i, jym1, k])) / dy
                        d_syz = (C4A * (syz[i, j, k] - syz[i, j, kzm1])
                                 - C4B * (syz[i, j, kzp1] - syz[i, j, kzm2])) / dz
                    vy[i, j, k] = (vy[i, j, k] + dt / rho_vy[i, j, k]
                                   * (d_sxy + d_syy + d_syz)) * wc

                # ---- vz at (i, j, k+1/2) --------------------------------
                if vac_vz[i, j, k]:
                    vz[i, j, k] = 0.0
                else:
                    if band_h[k]:
                        d_sxz = (sxz[i, j, k] - sxz[ixm1, j, k]) / dx
                        d_syz = (syz[i, j, k] - syz[i, jym1, k]) / dy
                        d_szz = (szz[i, j, kzp1] - szz[i, j, k]) / dz
                    else:
                        d_sxz = (C4A * (sxz[i, j, k] - sxz[ixm1, j, k])
                                 - C4B * (sxz[ixp1, j, k] - sxz[ixm2, j, k])) / dx
                        d_syz = (C4A * (syz[i, j, k] - syz[i, jym1, k])
                                 - C4B * (syz[i, jyp1, k] - syz[i, jym2, k])) / dy
                        d_szz = (C4A * (szz[i, j, kzp1] - szz[i, j, k])
                                 - C4B * (szz[i, j, kzp2] - szz[i, j, kzm1])) / dz
                    vz[i, j, k] = (vz[i, j, k] + dt / rho_vz[i, j, k]
                                   * (d_sxz + d_syz + d_szz)) * wc


@njit(cache=True, nogil=True)
def stress_kernel(i0, i1, vx, vy, vz, sxx, syy, szz, sxy, sxz, syz,
                  lam_n, mu_n, mu_xy, mu_xz, mu_yz,
                  w, band_i, band_h,
                  xm2, xm1, xp1, xp2, ym2, ym1, yp1, yp2,
                  zm2, zm1, zp1, zp2, dt, dx, dy, dz):
    ny = vx.shape[1]
    nz = vx.shape[2]
    for i in range(i0, i1):
        ixm2 = xm2[i]
        ixm1 = xm1[i]
        ixp1 = xp1[i]
        ixp2 = xp2[i]
        for j in range(ny):
            jym2 = ym2[j]
            jym1 = ym1[j]
            jyp1 = yp1[j]
            jyp2 = yp2[j]
            for k in range(nz):
                kzm2 = zm2[k]
                kzm1 = zm1[k]
                kzp1 = zp1[k]
                kzp2 = zp2[k]
                wc = w[i, j, k]

                # ---- normal stresses at (i, j, k) -----------------------
                if band_i[k]:
                    dvx = (vx[i, j, k] - vx[ixm1, j, k]) / dx
                    dvy = (vy[i, j, k] - vy[i, jym1, k]) / dy
                    dvz = (vz[i, j, k] - vz[i, j, kzm1]) / dz
                else:
                    dvx = (C4A * (vx[i, j, k] - vx[ixm1, j, k])
                           - C4B * (vx[ixp1, j, k] - vx[ixm2, j, k])) / dx
                    dvy = (C4A * (vy[i, j, k] - vy[i, jym1, k])
                           - C4B * (vy[i, jyp1, k] - vy[i, jym2, k])) / dy
                    dvz = (C4A * (vz[i, j, k] - vz[i, j, kzm1])
                           - C4B * (vz[i, j, kzp1] - vz[i, j, kzm2])) / dz
                lam = lam_n[i, j, k]
                mu2 = 2.0 * mu_n[i, j, k]
                tr = dvx + dvy + dvz
                sxx[i, j, k] = (sxx[i, j, k] + dt * (lam * tr + mu2 * dvx)) * wc
                syy[i, j, k] = (syy[i, j, k] + dt * (lam * tr + mu2 * dvy)) * wc
                szz[i, j, k] = (szz[i, j, k] + dt * (lam * tr + mu2 * dvz)) * wc

                # ---- sxy at (i+1/2, j+1/2, k) ---------------------------
                if band_i[k]:
                    dvy_dx = (vy[ixp1, j, k] - vy[i, j, k]) / dx
                    dvx_dy = (vx[i, jyp1, k] - vx[i, j, k]) / dy
                else:
                    dvy_dx = (C4A * (vy[ixp1, j, k] - vy[i, j, k])
                              - C4B * (vy[ixp2, j, k] - vy[ixm1, j, k])) / dx
                    dvx_dy = (C4A * (vx[i, jyp1, k] - vx[i, j, k])
                              - C4B * (vx[i, jyp2, k] - vx[i, jym1, k])) / dy
                sxy[i, j, k] = (sxy[i, j, k]
                                + dt * mu_xy[i, j, k] * (dvy_dx + dvx_dy)) * wc

                # ---- sxz at (i+1/2, j, k+1/2) ---------------------------
                if band_h[k]:
                    dvz_dx = (vz[ixp1, j, k] - vz[i, j, k]) / dx
                    dvx_dz = (vx[i, j, kzp1] - vx[i, j, k]) / dz
                else:
                    dvz_dx = (C4A * (vz[ixp1, j, k] - vz[i, j, k])
                              - C4B * (vz[ixp2, j, k] - vz[ixm1, j, k])) / dx
                    dvx_dz = (C4A * (vx[i, j, kzp1] - vx[i, j, k])
                              - C4B * (vx[i, j, kzp2] - vx[i, j, kzm1])) / dz
                sxz[i, j, k] = (sxz[i, j, k]
                                + dt * mu_xz[i, j, k] * (dvz_dx + dvx_dz)) * wc

                # ---- syz at (i, j+1/2, k+1/2) ---------------------------
                if band_h[k]:
                    dvz_dy = (vz[i, jyp1, k] - vz[i, j, k]) / dy
                    dvy_dz = (vy[i, j, kzp1] - vy[i, j, k]) / dz
                else:
                    dvz_dy = (C4A * (vz[i, jyp1, k] - vz[i, j, k])
                              - C4B * (vz[i, jyp2, k] - vz[i, jym1, k])) / dy
                    dvy_dz = (C4A * (vy[i, j, kzp1] - vy[i, j, k])
                              - C4B * (vy[i, j, kzp2] - vy[i, j, kzm1])) / dz
                syz[i, j, k] = (syz[i, j, k]
                                + dt * mu_yz[i, j, k] * (dvz_dy + dvy_dz)) * wc


@njit(cache=True, nogil=True)
def max_abs3(a, b, c):
    """Largest absolute value across three same-shape 3D arrays."""
    m = 0.0
    fa = a.ravel()
    fb = b.ravel()
    fc = c.ravel()
    for idx in range(fa.size):
        v = abs(fa[idx])
        if v > m:
            m = v
        v = abs(fb[idx])
        if v > m:
            m = v
        v = abs(fc[idx])
        if v > m:
            m = v
    return m
