#pragma once

// Reference values computed once with mpmath at 40 significant digits and
// frozen here. Each table uses a route independent of the library's own
// formulas:
//   struve / bessel / 2F1   mpmath.struvel, besselk, hyp2f1
//   density n = 1           integral of the bivariate normal density along xy = z
//   density, cdf, survival  Z_n = A G1 - B G2 with G ~ Gamma(n/2),
//                           A = s_n(1 + rho), B = s_n(1 - rho): one-dimensional
//                           convolution of gamma densities / regularized gammas
//   raw moments             Taylor coefficients of the moment generating function
//   medians                 root of the convolution cdf

namespace oracle {

struct NuX {
  double nu, x, value;
};

inline constexpr NuX kStruveL[] = {
    {-0.5, 0.1, 0.25273398460013198}, {-0.5, 1, 0.93767488824548765},  {-0.5, 5, 26.477547497559065},
    {-0.5, 20, 43279746.272428928},   {0, 0.1, 0.06373274106700835},    {0, 1, 0.71024318593789089},
    {0, 5, 27.105917126558147},       {0, 20, 43558282.527641047},      {0.5, 0.1, 0.012626179167252457},
    {0.5, 1, 0.43331565379010209},    {0.5, 5, 26.123126941075396},     {0.5, 20, 43279746.094016517},
    {1, 0.1, 0.0021234810227643951},  {1, 1, 0.22676438105580864},      {1, 5, 23.728215780408282},
    {1, 20, 42454972.750111979},      {2.5, 0.1, 5.2587167448411365e-6}, {2.5, 1, 0.017329221527885287},
    {2.5, 5, 12.791533337719354},     {2.5, 20, 37112373.595855338},    {4, 0.1, 6.7387589114517185e-9},
    {4, 1, 0.00069440308805674548},   {4, 5, 4.4865517333350207},       {4, 20, 28935012.632568891},
};

inline constexpr NuX kBesselK[] = {
    {0, 1e-06, 13.931442073626419},     {0.5, 0.001, 39.593659513116643},  {3.5, 0.01, 187995240.64178522},
    {10, 0.5, 188937569319.90026},      {25.5, 3, 4.5534499773567374e+19}, {40, 60, 5.1422476530462039e-22},
    {0.25, 300, 3.7240821157308347e-132}, {7, 650, 2.6089358574003648e-284}, {1.5, 2.0, 0.17990665795209217},
    {0.0, 1.0, 0.42102443824070833},
};

struct Hyp {
  double a, b, c, z, value;
};

inline constexpr Hyp kHyp2F1[] = {
    {-1.5, 2, 0.5, -3, 36.736291417161941},   {0.5, 1.5, 2.5, -10, 0.40886055654627885},
    {-3.5, -2, 0.5, -0.8, -2.7333333333333333}, {1, 2.5, 3.5, -100, 0.016240223050381853},
    {2, 3, 4.5, -0.3, 0.69994677052213611},   {4.5, 5, 0.5, -0.5625, 0.1183187211428823},
    {-3.5, 1.5, 0.5, -24, 603125.0},
};

struct Point {
  double x, value;
};

// n = 1, rho = 0.3, sigma_x = 1.5, sigma_y = 1.
inline constexpr Point kPdfN1[] = {
    {-2, 0.032063733899496545}, {-0.3, 0.34632300021241597}, {0.05, 0.77016307282065863},
    {1, 0.17387103403712438},   {4, 0.020176707336043835},
};

// n = 3, rho = -0.4, sigma_x = 2, sigma_y = 0.7.
inline constexpr Point kPdfN3[] = {
    {-3, 0.023002673401346405}, {-0.5, 0.5135858547364394},  {0.2, 0.41977320823224046},
    {1.7, 0.004071417591662809}, {6, 1.5505157996157064e-9},
};

// n = 5, rho = 0.6, s = 1.
inline constexpr Point kPdfN5[] = {
    {-1, 3.470862720663832e-5},
    {0.05, 0.66237052806686312},
    {0.8, 0.57630980305248181},
    {4, 0.00023510868635354936},
};

// XY with mu_x = 0.5, mu_y = -1, sigma_x = 1, sigma_y = 2, rho = 0.3.
inline constexpr Point kPdfNonZeroMean[] = {
    {-1.5, 0.10641178603912339},
    {0.7, 0.17994154658788822},
    {3, 0.041686235395626628},
};

struct CdfCase {
  int n;
  double rho, x, cdf, survival;
};

inline constexpr CdfCase kCdf[] = {
    {3, 0.5, -2, 3.2534818947310685e-6, 0.99999674651810527},
    {3, 0.5, -0.4, 0.026942114669538547, 0.97305788533046145},
    {3, 0.5, 0.3, 0.45126945353718242, 0.54873054646281758},
    {3, 0.5, 2.5, 0.98756920677464662, 0.012430793225353382},
    {5, 0.2, -2, 1.6531845433278041e-5, 0.99998346815456672},
    {5, 0.2, -0.4, 0.071779849962780497, 0.9282201500372195},
    {5, 0.2, 0.3, 0.63127697944993659, 0.36872302055006341},
    {5, 0.2, 2.5, 0.99972438893113628, 0.00027561106886371988},
    {4, -0.6, -2, 0.027598630908254073, 0.97240136909174593},
    {4, -0.6, -0.4, 0.56506282163933539, 0.43493717836066461},
    {4, -0.6, 0.3, 0.98884769668559848, 0.011152303314401524},
    {4, -0.6, 2.5, 0.99999999998466771, 1.5332290026920279e-11},
    {1, 0, -2, 0.030914444737796121, 0.96908555526220388},
    {1, 0, -0.4, 0.23720560752278498, 0.76279439247721502},
    {1, 0, 0.3, 0.72344209936309857, 0.27655790063690143},
    {1, 0, 2.5, 0.98267678713521234, 0.017323212864787657},
    {2, 0, -2, 0.0091578194443670901, 0.99084218055563291},
    {2, 0, -0.4, 0.22466448205861079, 0.77533551794138921},
    {2, 0, 0.3, 0.72559418195298678, 0.27440581804701322},
    {2, 0, 2.5, 0.99663102650045727, 0.0033689734995427335},
    {6, 0, -2, 8.1410813681598779e-5, 0.9999185891863184},
    {6, 0, -0.4, 0.14605590479595412, 0.85394409520404588},
    {6, 0, 0.3, 0.79089690639969302, 0.20910309360030698},
    {6, 0, 2.5, 0.99999411138033034, 5.8886196696601464e-6},
    {3, 0, -2, 0.0027456581564591582, 0.99725434184354084},
    {3, 0, -0.4, 0.20279483752064992, 0.79720516247935008},
    {3, 0, 0.3, 0.74164821130407631, 0.25835178869592369},
    {3, 0, 2.5, 0.99933017837691465, 0.00066982162308534735},
    {2, 0.35, -2, 0.00069071984504289333, 0.99930928015495711},
    {2, 0.35, -0.4, 0.094922042699709591, 0.90507795730029041},
    {2, 0.35, 0.3, 0.56720323780978065, 0.43279676219021935},
    {2, 0.35, 2.5, 0.98337331412910491, 0.016626685870895089},
    {8, -0.2, -2, 0.00014433815516831574, 0.99985566184483168},
    {8, -0.2, -0.4, 0.26191147690683787, 0.73808852309316213},
    {8, -0.2, 0.3, 0.93357050871467344, 0.066429491285326563},
    {8, -0.2, 2.5, 0.9999999986301424, 1.3698576010015105e-9},
};

struct MomentCase {
  int n;
  double rho, s;
  double raw[9];  // index = order, raw[0] = 1
};

inline constexpr MomentCase kRawMoments[] = {
    {3, 0.6, 2.0,
     {1, 1.2, 3.2533333333333333, 11.84, 56.504888888888889, 329.44924444444444, 2275.6736316049383,
      18152.122140444444, 164214.50203338272}},
    {1, -0.3, 1.0, {1, -0.3, 1.18, -2.862, 15.6744, -83.9916, 633.76488, -5223.247848, 51764.1913152}},
    {4, 0.9, 0.5,
     {1, 0.45, 0.315625, 0.297421875, 0.3514658203125, 0.49920205078125, 0.82797979614257812,
      1.5703919618225098, 3.3521082740764618}},
    {7, 0.1, 1.3,
     {1, 0.13, 0.26074285714285714, 0.12428742857142857, 0.27038856909620991, 0.24507379260974594,
      0.58515475294266437, 0.80897344841397988, 2.1336841338712854}},
};

// Medians, s = 1; rows n = 1, 3, 5, 7, 10; columns rho = 0.1, 0.3, 0.5, 0.7, 0.9.
inline constexpr int kMedianN[] = {1, 3, 5, 7, 10};
inline constexpr double kMedianRho[] = {0.1, 0.3, 0.5, 0.7, 0.9};
inline constexpr double kMedian[5][5] = {
    {0.019804601, 0.081309756, 0.16357294, 0.26477762, 0.38574483},
    {0.067409566, 0.21007043, 0.36397039, 0.52782187, 0.69998326},
    {0.080237947, 0.24466162, 0.41609044, 0.59403051, 0.77719449},
    {0.085850985, 0.26013237, 0.43943828, 0.6235659, 0.8115045},
    {0.090083595, 0.27193774, 0.45730083, 0.64612872, 0.83766845},
};

}  // namespace oracle
