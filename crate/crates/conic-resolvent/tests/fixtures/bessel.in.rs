// Frozen high-precision reference values (extended-precision arithmetic).
// Layout documented at each constant; regenerating requires no project code.

// (nu, x, J_nu(x), Y_nu(x), J_nu'(x), Y_nu'(x))
const BESSEL_REFERENCE: &[(f64, f64, f64, f64, f64, f64)] = &[
    (0.5, 1e-08, 7.978845608028654e-05, -7978.845608028653, 3989.4228040143266, 398942280401.43274),
    (0.5, 1e-06, 0.0007978845608027324, -797.8845608024665, 398.9422804011002, 398942280.40203106),
    (0.5, 0.0001, 0.007978845594730577, -79.78845568134426, 39.89422770769137, 398942.28638556687),
    (0.5, 0.01, 0.07978712627933422, -7.97844666907276, 3.989090355106049, 399.00212057991735),
    (0.5, 0.5, 0.540973789934528, -0.9902458802434049, 0.44927209030887677, 1.531219670177933),
    (0.5, 1.0, 0.6713967071418031, -0.4310988680183761, 0.09540051444747454, 0.8869461411509911),
    (0.5, 1.999, 0.513379026528795, 0.23433116707879387, -0.362740128191549, 0.4547669287101872),
    (0.5, 2.0, 0.5130161365618278, 0.23478571040624846, -0.3630397445467054, 0.45431970896026563),
    (0.5, 3.0, 0.06500818287737578, 0.45604882079463316, -0.46688351794086247, -0.010999953921729751),
    (0.5, 10.0, -0.1372637357550505, 0.21170886633139815, -0.20484567954364563, -0.1478491790716204),
    (0.5, 60.0, -0.03139746118252041, 0.09810468373503792, -0.09784303822518357, -0.03221500021364573),
    (0.5, 100.0, -0.04040213271625212, -0.06880309146872808, 0.06900510213230934, -0.04005811725890848),
    (0.5, 2718.28, -0.01100318953076076, 0.010636226012185888, -0.01063420208721665, -0.011005145956517522),
    (0.5, 10000.0, -0.0024384500245313917, 0.007597100678194346, -0.007596978755693119, -0.0024388298795653012),
    (1.0, 1e-08, 5e-09, -63661977.236758195, 0.5, 6366197723675808.0),
    (1.0, 1e-06, 4.999999999999375e-07, -636619.772372175, 0.4999999999998125, 636619772363.306),
    (1.0, 0.0001, 4.99999999375e-05, -6366.198036455761, 0.499999998125, 63661974.42726855),
    (1.0, 0.01, 0.004999937500260416, -63.67859628206066, 0.49998125013020794, 6364.854172568982),
    (1.0, 0.5, 0.2422684576748739, -1.471472392670243, 0.4539328918910651, 2.4984260518337797),
    (1.0, 1.0, 0.4400505857449335, -0.7812128213002887, 0.32514710081303305, 0.8694697855159657),
    (1.0, 1.999, 0.5767890792130258, -0.10759642423945669, -0.06407127289293514, 0.5640934829207238),
    (1.0, 2.0, 0.5767248077568734, -0.10703243154093754, -0.06447162473720103, 0.5638918884202139),
    (1.0, 3.0, 0.3390589585259365, 0.3246744247918, -0.37307160774391224, 0.26862520174885707),
    (1.0, 10.0, 0.04347274616886144, 0.24901542420695388, -0.25028303906823446, 0.030769624862904004),
    (1.0, 60.0, 0.046598383758166315, 0.09186960936986689, -0.09224844381836464, 0.04582779205328495),
    (1.0, 100.0, -0.07714535201411216, -0.020372312002759792, 0.020757303824364245, -0.07704059024505555),
    (1.0, 2718.28, -0.00026159329621193667, 0.01530134191714339, -0.015301293023153131, -0.00026440780967157315),
    (1.0, 10000.0, 0.0036474507555295803, 0.007096342752536495, -0.007096525098464354, 0.003647095924711352),
    (1.5, 1e-08, 2.659615202676218e-13, -797884560802.8654, 3.989422804014327e-05, 1.196826841204298e+20),
    (1.5, 1e-06, 2.659615202675952e-10, -797884560.8032643, 0.0003989422804013396, 1196826841204098.5),
    (1.5, 0.0001, 2.659615200016603e-07, -797884.5647922881, 0.003989422794705674, 11968268392.095867),
    (1.5, 0.01, 0.0002659588606619177, -797.9244540335553, 0.03989329718004656, 119680.68965836422),
    (1.5, 0.5, 0.0917016996256513, -2.521465550421338, 0.26586869105757416, 6.574150771020609),
    (1.5, 1.0, 0.240297839123427, -1.1024955751601793, 0.3109499484566626, 1.2226444947218926),
    (1.5, 1.999, 0.49114908930430407, -0.39615483089157943, 0.14483293650555526, 0.5315959226252517),
    (1.5, 2.0, 0.49129377868716234, -0.3956232813587035, 0.144545802546456, 0.5315031714252761),
    (1.5, 3.0, 0.4777182150870918, 0.08700809072083528, -0.1738509246661701, 0.4125447754342155),
    (1.5, 10.0, 0.1979824927558931, 0.15843462238819028, -0.16696110966843444, 0.1879436729731696),
    (1.5, 60.0, 0.09758139271532924, 0.03303253924477104, -0.033836996000403644, 0.09727887025391864),
    (1.5, 100.0, -0.0692071127958906, 0.039714101801564844, -0.03936402602431376, -0.06939880299575156),
    (1.5, 2718.28, 0.01063217816224741, 0.011007102382274285, -0.011009056574348385, 0.010630152078090278),
    (1.5, 10000.0, 0.007596856833191893, 0.002439209734599211, -0.0024395895530563705, 0.007596734796734156),
    (2.5, 1e-08, 5.319230405352436e-22, -2.393653682408596e+20, 1.329807601338109e-13, 5.98413420602149e+28),
    (2.5, 1e-06, 5.3192304053520556e-17, -2393653682408995.0, 1.329807601337938e-10, 5.984134206021689e+21),
    (2.5, 0.0001, 5.3192304015529855e-12, -23936536863.98019, 1.3298075996283563e-07, 598413420801620.1),
    (2.5, 0.01, 5.31919241095508e-07, -239369.35776339754, 0.0001329790503880407, 59841541.516395345),
    (2.5, 0.5, 0.009236407819379724, -14.138547422284622, 0.04551966052875268, 68.17127156100177),
    (2.5, 1.0, 0.04949681022847794, -2.8763878574621615, 0.11655581355223216, 6.088474068495224),
    (2.5, 1.999, 0.22371315351768442, -0.8288606781717094, 0.21136775674091687, 0.640439313895451),
    (2.5, 2.0, 0.22392453146891578, -0.8282206324443038, 0.21138811435101765, 0.6396525091966762),
    (2.5, 3.0, 0.41271003220971597, -0.3690407300737979, 0.13379318824566178, 0.3945420324490002),
    (2.5, 10.0, 0.19665848358181842, -0.16417847961494106, 0.1488178718604385, 0.19947924229192557),
    (2.5, 60.0, 0.03627653081828688, -0.09645305677279936, 0.09606987059790062, 0.03705141661030435),
    (2.5, 100.0, 0.038325919332375405, 0.06999451452277503, -0.07016526077919999, 0.037964238938495466),
    (2.5, 2718.28, 0.01101492361793601, -0.010624078143994669, 0.01062204774557038, 0.01101687333867318),
    (2.5, 10000.0, 0.0024407290815813493, -0.007596368915273966, 0.007596246650921497, 0.0024411088268280296),
    (3.5, 1e-08, 7.598900579074908e-31, -1.196826841204298e+29, 2.659615202676218e-22, 4.188893944215043e+37),
    (3.5, 1e-06, 7.598900579074486e-24, -1.1968268412044177e+22, 2.6596152026759856e-17, 4.188893944215222e+28),
    (3.5, 0.0001, 7.598900574853296e-17, -1196826842401125.0, 2.6596152003543314e-12, 4.188893946010283e+19),
    (3.5, 0.01, 7.598858363056526e-10, -119683880.95724472, 2.6595919838852966e-07, 41889118965.677895),
    (3.5, 0.5, 0.0006623785681459423, -138.8640086724249, 0.004599757842358128, 957.9095132846895),
    (3.5, 1.0, 0.0071862120189627, -13.279443712150629, 0.02434506816210849, 43.60166513506503),
    (3.5, 1.999, 0.06841357582247036, -1.677033458682481, 0.10392950400360426, 2.1074160128681525),
    (3.5, 2.0, 0.06851754998512707, -1.6749282997520558, 0.10401881899494339, 2.102903892121794),
    (3.5, 3.0, 0.21013183859576823, -0.7020759741771652, 0.16755622051465308, 0.45004790646622805),
    (3.5, 10.0, -0.0996532509649839, -0.24052386219566083, 0.23153712141956279, -0.07999512784645978),
    (3.5, 60.0, -0.094558348480472, -0.04107029397583766, 0.04179243447964774, -0.09405728962420884),
    (3.5, 100.0, 0.07112340876250937, -0.03621437607542609, 0.03583660002568758, 0.07126201768541494),
    (3.5, 2718.28, -0.010611917328893349, -0.011026644295072073, 0.011028587298885407, -0.010609880469350132),
    (3.5, 10000.0, -0.007595636468651102, -0.002443007919056848, 0.002443387554345377, -0.007595513862502296),
    (7.5, 1e-08, 3.9362344361952387e-67, -1.078221301240952e+65, 2.952175827146429e-58, 8.086659759307141e+73),
    (7.5, 1e-06, 3.936234436195123e-52, -1.0782213012409937e+50, 2.952175827146319e-45, 8.08665975930737e+56),
    (7.5, 0.0001, 3.936234435037523e-37, -1.0782213016556526e+35, 2.952175826046599e-32, 8.086659761587993e+39),
    (7.5, 0.01, 3.936222859050365e-22, -1.0782254482553818e+20, 2.952164828861846e-19, 8.086682567867654e+22),
    (7.5, 0.5, 2.158546507176618e-09, -19706633.699610583, 3.2314661738456575e-08, 294840227.2606228),
    (7.5, 1.0, 3.8219741213480424e-07, -112065.16242427878, 2.8439283934568823e-06, 831806.9796864205),
    (7.5, 1.999, 6.306871494969755e-05, -698.777102397153, 0.0002291159971992534, 2511.0406678611694),
    (7.5, 2.0, 6.329818630237479e-05, -696.2712505347139, 0.00022982701010543382, 2500.6711202574756),
    (7.5, 3.0, 0.0011399140728703852, -40.735376063503345, 0.002642718437439047, 91.72135330067876),
    (7.5, 10.0, 0.2860884861168645, 0.1072491091849398, -0.10228363093359301, 0.18418129876574227),
    (7.5, 60.0, -0.07373776894555138, -0.0725019656347736, 0.07256027718174467, -0.07254853100762186),
    (7.5, 100.0, 0.07739982782510009, -0.019833361404306877, 0.019388580589123114, 0.077282562065279),
    (7.5, 2718.28, -0.010522343827555168, -0.011112184820529643, 0.011114078204976851, -0.010520259965154552),
    (7.5, 10000.0, -0.007590244308779372, -0.0024597126651626053, 0.0024600914888709387, -0.00759011919780857),
    (10.0, 1e-08, 2.6911444554673723e-90, -1.1828049049433494e+88, 2.691144455467372e-81, 1.1828049049433493e+97),
    (10.0, 1e-06, 2.691144455467311e-70, -1.1828049049433822e+68, 2.6911444554672985e-63, 1.1828049049433757e+75),
    (10.0, 0.0001, 2.6911444548557484e-50, -1.1828049052719063e+48, 2.6911444547334236e-45, 1.1828049052061948e+53),
    (10.0, 0.01, 2.6911383392363445e-30, -1.1828081905176634e+28, 2.691137115991413e-27, 1.1828075334017739e+31),
    (10.0, 0.5, 2.6131773608228033e-13, -121963623349.56963, 5.2204128676833734e-12, 2435881641846.7515),
    (10.0, 1.0, 2.6306151236874534e-10, -121618014.27868919, 2.6186350562244217e-09, 1209399937.84816),
    (10.0, 1.999, 2.5030668429143356e-07, -129817.61652507403, 1.2292411512358001e-06, 634789.1379967874),
    (10.0, 2.0, 2.515386282716737e-07, -129184.54220803929, 1.234650293774696e-06, 631362.8816642854),
    (10.0, 3.0, 1.2928351645715883e-05, -2582.6071294842995, 4.130051582337217e-05, 8163.730927550077),
    (10.0, 10.0, 0.20748610663335887, -0.35981415218340274, 0.08436957863176119, 0.1605148863781584),
    (10.0, 60.0, 0.09717714332807109, 0.036290350559545506, -0.03661713592430125, 0.09551094550027972),
    (10.0, 100.0, -0.05473217693547201, 0.058331574236414926, -0.057763543712483684, -0.05475315350576651),
    (10.0, 2718.28, 0.015294092836790363, 0.0005401747498104303, -0.0005429843347300174, 0.01529389024253281),
    (10.0, 10000.0, 0.007114312383354275, -0.003612280207880416, 0.003611922690281246, 0.0071144894492806985),
    (25.5, 1e-08, 2.677260209272665e-238, -4.6625055687245513e+235, 6.827013533645295e-229, 1.1889389200247606e+245),
    (25.5, 1e-06, 2.6772602092726395e-187, -4.6625055687245995e+184, 6.827013533645226e-180, 1.1889389200247718e+192),
    (25.5, 0.0001, 2.677260209020093e-136, -4.662505569200317e+133, 6.827013532950722e-131, 1.1889389201365657e+139),
    (25.5, 0.01, 2.6772576835566344e-85, -4.662510326385826e+82, 6.827006587926441e-82, 1.1889400380751095e+86),
    (25.5, 0.5, 5.62861275564571e-42, -2.2181566176724652e+39, 2.8700614586279984e-40, 1.131033507924978e+41),
    (25.5, 1.0, 2.6521175078353224e-34, -4.710336163131305e+31, 6.757893931908419e-33, 1.2001740107158451e+33),
    (25.5, 1.999, 1.2079070195900813e-26, -1.0366140661112083e+24, 1.5362897533535166e-25, 1.3181077795484377e+25),
    (25.5, 2.0, 1.2233641163123017e-26, -1.0235197114567699e+24, 1.5551664283287186e-25, 1.3008027182002111e+25),
    (25.5, 3.0, 3.6087048861254025e-22, -3.4832922654075777e+19, 3.0469090764735024e-21, 2.9393881168343548e+20),
    (25.5, 10.0, 3.240565665079837e-09, -4188300.6294274293, 7.629528417515672e-09, 9784470.317981234),
    (25.5, 60.0, 0.0964498995354088, -0.049170746368864, 0.04353329299355855, 0.08781517732906033),
    (25.5, 100.0, 0.07458320581740516, -0.03195421014060505, 0.03049960182898725, 0.07228982689249537),
    (25.5, 2718.28, 0.009248068712351324, 0.012193564304073716, -0.01219472920830886, 0.009245418856552145),
    (25.5, 10000.0, 0.007513865300493979, 0.002684029132707435, -0.0026843961053057562, 0.007513706678063486),
    (40.0, 0.0001, 1.1146925672198022e-220, -7.13896135009438e+217, 4.458770268865615e-215, 2.8555845400285996e+223),
    (40.0, 0.01, 1.1146918875973838e-140, -7.138965925895535e+137, 4.458767414451498e-137, 2.8555862788330085e+141),
    (40.0, 0.5, 1.0122626959003595e-72, -7.861960484882533e+69, 8.09748431144764e-71, 6.289064394824359e+71),
    (40.0, 1.0, 1.1079158511286327e-60, -7.184874796801384e+57, 4.430312091412078e-59, 2.873028625484609e+59),
    (40.0, 1.999, 1.1724162783409331e-48, -6.795972955065726e+45, 2.3431457773478165e-47, 1.3581316667076962e+47),
    (40.0, 2.0, 1.1960774581136801e-48, -6.661541235527183e+45, 2.389235958097154e-47, 1.3305990054532031e+47),
    (40.0, 3.0, 1.2827926510806752e-41, -6.220987837606726e+38, 1.705690909737554e-40, 8.270687133877619e+39),
    (40.0, 10.0, 6.030895312346907e-21, -1.3628032972693373e+18, 2.33771147940464e-20, 5.273440586786047e+18),
    (40.0, 60.0, -0.07764619740471507, -0.09054508490969629, 0.06868764982077065, -0.05655139080801762),
    (40.0, 100.0, 0.07270175482281106, 0.040746852168803444, -0.037779096899440257, 0.06639204870649075),
    (40.0, 2718.28, -0.014569194974246026, -0.004686512347335994, 0.004688685433972217, -0.014566755529609529),
    (40.0, 10000.0, -0.007365007799604916, 0.0030690628163756108, -0.0030686700113304365, -0.007365102344109779),
    (60.5, 0.01, 9.456605165289387e-223, -5.563646163416425e+219, 5.721246048117109e-219, 3.3660058821136075e+223),
    (60.5, 0.5, 5.794011271573025e-120, -9.0809284313206e+116, 7.0105181058600205e-118, 1.0987541843431811e+119),
    (60.5, 1.0, 9.418244291601697e-102, -5.587070503069066e+98, 5.697272035692297e-100, 3.3797081189076043e+100),
    (60.5, 1.999, 1.4718173606583825e-83, -3.5766635747561565e+80, 4.4520821290016796e-82, 1.0818809804410932e+82),
    (60.5, 2.0, 1.5170068891639852e-83, -3.470121632138669e+80, 4.5864785197863025e-82, 1.0491284123502e+82),
    (60.5, 3.0, 6.693879147248857e-73, -7.869581223183559e+69, 1.3482986844422401e-71, 1.5850470011772354e+71),
    (60.5, 10.0, 1.9889042676983935e-41, -2.6822408598843352e+38, 1.1870105899431389e-40, 1.600051581113859e+39),
    (60.5, 60.0, 0.10081521494648832, -0.2210219718107456, 0.026062126239032108, 0.0481080857795382),
    (60.5, 100.0, -0.038908594115242494, -0.08050235144875512, 0.06441245676894376, -0.030349168815687437),
    (60.5, 2718.28, -0.015236177022235516, 0.0014547912846798498, -0.0014516270119472444, -0.015232670831262323),
    (60.5, 10000.0, -0.0037802943430028514, 0.007026557974084135, -0.0070262403652632125, -0.003780576503742185),
];
