// Reference values generated offline with mpmath at 40 significant digits.
// Each row: x, log-gamma(x), digamma(x), trigamma(x).
#pragma once

#include <array>

namespace ldmcap::testref {

struct SpecialRow {
  double x;
  double lgamma;
  double digamma;
  double trigamma;
};

inline constexpr std::array<SpecialRow, 50> kSweep = {{
    {0.01, 4.599479878042022, -100.56088545786868, 10001.621213528313},
    {0.012648552168552958, 4.363042360129057, -79.61703188777928, 6252.166961986206},
    {0.015998587196060583, 4.126229116858418, -63.0567216036267, 3908.5472231170556},
    {0.020235896477251575, 3.8889502395882762, -49.961545996641085, 2443.6506752870996},
    {0.025595479226995357, 3.6510976409378877, -39.605281946904796, 1528.003426548125},
    {0.032374575428176434, 3.4125434935608348, -31.413621857706335, 955.6658460842384},
    {0.040949150623804255, 3.1731400839643786, -24.93233209155833, 597.913992769303},
    {0.05179474679231213, 2.9327224358532358, -19.802075476835476, 374.2879544231274},
    {0.0655128556859551, 2.6911158966524216, -15.738503781517574, 234.49547121429393},
    {0.08286427728546843, 2.4481521383216127, -12.516519097714378, 147.1007202250675},
    {0.10481131341546858, 2.203698856473707, -9.95783511424796, 92.45421284061528},
    {0.13257113655901087, 1.9577110419111963, -7.921152933494932, 58.273636724245065},
    {0.16768329368110083, 1.7103152325222069, -6.294411208073352, 36.881699402705614},
    {0.21209508879201905, 1.4619427896623647, -4.988684384102048, 23.47969943449509},
    {0.2682695795279726, 1.2135340775844967, -3.933391349124754, 15.068482792656136},
    {0.3393221771895328, 0.9668424837250387, -3.0725441677681045, 9.774029591600918},
    {0.42919342601287785, 0.7248755316794553, -2.3618167743404808, 6.425912056988729},
    {0.5428675439323859, 0.49252014194539867, -1.7662508059280215, 4.293746086494995},
    {0.6866488450043002, 0.27741114666794625, -1.2584453729308471, 2.9223290537581206},
    {0.8685113737513525, 0.09111805492033327, -0.8171048877289085, 2.0284155713417036},
    {1.0985411419875584, -0.04925271678417528, -0.4258479035385549, 1.4360195631960824},
    {1.3894954943731375, -0.11891133656278818, -0.07221033530260475, 1.035848269431558},
    {1.7575106248547911, -0.08252093653367126, 0.25319554430394203, 0.759904162995684},
    {2.2229964825261956, 0.10961514984748925, 0.557384800472162, 0.5656512292828046},
    {2.8117686979742307, 0.5266245490850264, 0.8455754119246844, 0.42621324878366174},
    {3.5564803062231287, 1.2638039322083652, 1.1216448438477975, 0.3243564912478173},
    {4.498432668969444, 2.4515600558815405, 1.3884810161600107, 0.24882162021354887},
    {5.689866029018299, 4.26725453087788, 1.6482449727453432, 0.19209458859299133},
    {7.196856730011521, 6.950867072142914, 1.9025637542595364, 0.14904845074857132},
    {9.102981779915218, 10.825670598601821, 2.1526705170766154, 0.11610850053126061},
    {11.513953993264469, 16.325474330050085, 2.3995060009637745, 0.09073172165415033},
    {14.563484775012444, 24.03046294838679, 2.6437921901300343, 0.071076224597508},
    {18.420699693267164, 34.71427311095974, 2.8860861230613115, 0.05578692887323435},
    {23.29951810515372, 49.40574466935816, 3.1268195292962027, 0.04385354947651203},
    {29.4705170255181, 69.46981655398051, 3.366328293291402, 0.03451442548693195},
    {37.27593720314942, 96.7133758038976, 3.6048745548086267, 0.02719001815591865},
    {47.14866363457394, 133.52360221755575, 3.842663426134225, 0.021436020528759092},
    {59.63623316594643, 183.04859614564444, 4.0798557329460605, 0.016909703569887864},
    {75.43120063354615, 249.43298210701198, 4.316577788435153, 0.013345377498797583},
    {95.40954763499944, 338.12493836372755, 4.55292893339828, 0.010536250293663597},
    {120.67926406393289, 456.2759600217415, 4.788987380129729, 0.008320855000595291},
    {152.64179671752333, 613.2609397209085, 5.024814759198003, 0.006572792102305534},
    {193.06977288832496, 821.3542564991687, 5.260459668215799, 0.0051929113163416},
    {244.205309454865, 1096.608029060049, 5.495960448790032, 0.004103310671173519},
    {308.88435964774783, 1459.9921954360434, 5.731347364031967, 0.003242703763846185},
    {390.6939937054621, 1938.8735031604017, 5.96664430887903, 0.0025628263602017302},
    {494.17133613238383, 2568.932959666496, 6.201870155264254, 0.0020256384863265027},
    {625.0551925273976, 3396.650251184271, 6.437039811225903, 0.0016011391760529015},
    {790.6043210907702, 4482.520953353927, 6.672165055501758, 0.0012656554834799322},
    {1000.0, 5905.220423209181, 6.907255195648812, 0.0010005001666666333},
}};

inline constexpr double kDigammaOne = -0.5772156649015329;
inline constexpr double kDigammaTwo = 0.42278433509846713;
inline constexpr double kDigammaTenHalf = 2.3030010342976865;
inline constexpr double kLgammaHalf = 0.5723649429247001;

}  // namespace ldmcap::testref
