#pragma once

// Legendre elliptic integrals. The second argument is always the
// parameter m = k^2, never the modulus k.

namespace tla {

// Carlson symmetric forms.
double carlson_rf(double x, double y, double z);
double carlson_rd(double x, double y, double z);

double ellip_K(double m);
double ellip_Ecomp(double m);

// Incomplete integrals for any real amplitude x, using
// F(x + pi) = F(x) + 2K and oddness in x.
double ellip_F(double x, double m);
double ellip_E(double x, double m);

}  // namespace tla
