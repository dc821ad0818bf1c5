"""Frozen Chebyshev tables for the Riemann-Siegel remainder surface.

Generated by birkhoff_lab.zeta.fit_rs_correction_tables(); shape is
(orders in w, degree+1 in p).  Regenerate with that function after any
change to the fitting ranges."""

RS_REMAINDER_CHEB = [
    [
        0.6429191398810257, 0.0024628345851556758, 0.27178555166711726, 0.0039555381565437855,
        0.010743812216328651, 0.0006387431881599963, -0.001347057962538876, -7.355352518340914e-06,
        -0.00011969696330873614, -2.0662708851406017e-06, 4.388245430273029e-06, 4.7154971731220395e-06,
        7.355073902700911e-06, 8.298127563133744e-06, 1.0471144631238301e-05, 1.0289692997219452e-05,
        8.451544750208192e-06, 4.374190481648587e-06, 7.042827671599804e-07, -1.573396747033613e-06,
        -6.753735968652792e-07, 1.3484547999990545e-06, 2.97936640918897e-06, 3.962994437325512e-06,
        3.1453488620999213e-06, 1.041968042586222e-06, -5.3825418362054905e-06, -8.614805360216698e-06,
        -9.637064929253776e-06, -6.163781527381375e-06, -4.122358513218258e-06, -2.8780094001275615e-06,
        -4.126075527977127e-06, -5.695519176013031e-06, -6.87978918264876e-06, -8.28323099816313e-06,
        -1.0191703226694383e-05, -1.0309328919864938e-05, -7.8244772209248e-06, -5.2303462146787485e-06,
        -3.7810734399519426e-06, -4.362781609531792e-06, -3.7022796309162797e-06, -4.26861195974168e-06,
        -2.979279292805804e-06,
    ],
    [
        0.00033644335013194624, 0.0024639576338815155, -0.00025150068379610615, 0.003958359831960619,
        7.1110147636470235e-06, 0.0006369862002795138, 3.608088293023907e-05, -6.694158492744946e-06,
        8.317823727405803e-06, 1.6126524840920962e-06, 9.484427506065016e-06, 9.14083477622338e-06,
        1.3369076243026122e-05, 1.567588086318802e-05, 1.976958307049108e-05, 1.9482974827677674e-05,
        1.5983485495493772e-05, 8.262836215682125e-06, 1.306410262528386e-06, -3.0063001718818754e-06,
        -1.31623028235511e-06, 2.5776412451500744e-06, 5.64720756296057e-06, 7.466792729527495e-06,
        5.997884852756698e-06, 2.0008737377745567e-06, -1.0152110786925207e-05, -1.6393324776501103e-05,
        -1.8204457357372813e-05, -1.164611902505119e-05, -7.76718092984502e-06, -5.408621239632499e-06,
        -7.770375079423334e-06, -1.0790396195415575e-05, -1.2995602871264282e-05, -1.5606045265996652e-05,
        -1.9284399243026782e-05, -1.9540122432684687e-05, -1.4761169537533533e-05, -9.844390809643672e-06,
        -7.153351364842075e-06, -8.212710415363052e-06, -7.025254566589977e-06, -8.044569099988332e-06,
        -5.65910997609334e-06,
    ],
    [
        8.512087990798737e-05, 1.2776811943298213e-06, -6.566608081306803e-05, 2.929423089889266e-06,
        2.064624438385018e-06, -1.9885723923557552e-06, 8.303474375064466e-06, 9.832330862762955e-07,
        5.4436925778521886e-06, 6.588531653509045e-06, 8.075604500279584e-06, 7.930710707380473e-06,
        1.119750675170528e-05, 1.3194733678822127e-05, 1.662825844838615e-05, 1.6490167668152125e-05,
        1.3478999035203448e-05, 6.944778183576066e-06, 1.0390815814609826e-06, -2.6109500421522193e-06,
        -1.2068368413723529e-06, 2.2420812307242487e-06, 4.793905372068557e-06, 6.226981592005274e-06,
        5.180398874972502e-06, 1.763308506381617e-06, -8.49438039764214e-06, -1.407572775643811e-05,
        -1.5301191793188744e-05, -9.793794598005999e-06, -6.480153947303977e-06, -4.475631397361044e-06,
        -6.472530582761601e-06, -9.147598349184247e-06, -1.092312701942041e-05, -1.3014598723457285e-05,
        -1.6289021717728296e-05, -1.65871404273861e-05, -1.235837021129771e-05, -8.184852771254617e-06,
        -6.040287739302313e-06, -6.8318026365077685e-06, -5.983632585679286e-06, -6.714124330072266e-06,
        -4.834344141265699e-06,
    ],
    [
        6.828170922646403e-07, 6.900867668365624e-08, -2.4444761367437338e-06, -3.6210429716481717e-07,
        2.7368317016538547e-07, -1.282683384004025e-07, -7.954980229208831e-07, 4.721096458948566e-07,
        3.5683021192655744e-06, 4.987358804920624e-06, 5.916964573048193e-06, 5.957074614011163e-06,
        8.238664453406648e-06, 9.842947715575864e-06, 1.2356888223339682e-05, 1.2392997101242946e-05,
        1.0061436111907745e-05, 5.159303590668999e-06, 6.983846321324605e-07, -2.0385152489432617e-06,
        -1.0240275819822245e-06, 1.7624295467182127e-06, 3.620725622142636e-06, 4.55529056824238e-06,
        4.026431645186849e-06, 1.3994721101094237e-06, -6.246234293705871e-06, -1.0836239705379392e-05,
        -1.1347986825699567e-05, -7.287581185977131e-06, -4.750876689122268e-06, -3.241565902919836e-06,
        -4.730997502524321e-06, -6.894440597660687e-06, -8.112641547497457e-06, -9.5342462459435e-06,
        -1.2196177886710489e-05, -1.2523429505548171e-05, -9.115511975585182e-06, -5.966073837723898e-06,
        -4.529302620287536e-06, -4.975652657896246e-06, -4.551930433029205e-06, -4.917922495482998e-06,
        -3.69053608147754e-06,
    ],
    [
        2.1545318336612511e-07, -1.4022225550395694e-07, -1.2922768732663944e-06, -7.991847928316441e-07,
        2.4020555414669237e-07, 1.5674391197642966e-07, -5.714262886990766e-07, 2.1242533730421694e-07,
        2.318616060335169e-06, 3.373398810444197e-06, 3.6878297928444386e-06, 3.930155858097348e-06,
        5.251765738668113e-06, 6.4202483076962915e-06, 8.002351967708851e-06, 8.16121904708502e-06,
        6.557514011426569e-06, 3.3447352631539928e-06, 3.865190554151218e-07, -1.4043816096390092e-06,
        -7.815359655421054e-07, 1.232677024077122e-06, 2.4009838326029856e-06, 2.8783943996406122e-06,
        2.775274699206094e-06, 9.765412661757437e-07, -3.9746968258488745e-06, -7.376640673043769e-06,
        -7.319586282471576e-06, -4.7388371329530136e-06, -3.0204517419839244e-06, -2.029229649586121e-06,
        -2.9927331125202824e-06, -4.559651013468818e-06, -5.255623540468283e-06, -6.051913958394375e-06,
        -7.987456925610753e-06, -8.29730154472043e-06, -5.844315555475018e-06, -3.7601884565678573e-06,
        -2.982097538338187e-06, -3.1239107926375643e-06, -3.0561506819569742e-06, -3.1131860862628803e-06,
        -2.4845639743203846e-06,
    ],
    [
        1.0100454688198766e-07, -7.788151583012769e-08, -6.985158852533595e-07, -5.340077874501294e-07,
        2.4437005443185323e-07, 6.96848341161034e-08, -3.6205783007939744e-07, 8.014382107226269e-08,
        1.2793503352576165e-06, 1.991674049283611e-06, 1.921377890695421e-06, 2.242631865115246e-06,
        2.8354186185069543e-06, 3.5944867336592632e-06, 4.419254264266606e-06, 4.617787637179137e-06,
        3.65302631354753e-06, 1.8558472083312225e-06, 1.6618652240487293e-07, -8.316316465192127e-07,
        -5.215339351817021e-07, 7.520551457265162e-07, 1.3712360934980777e-06, 1.5306296079512512e-06,
        1.6648229001355149e-06, 5.768279823772902e-07, -2.1307697583362447e-06, -4.358052234267465e-06,
        -4.009698976491594e-06, -2.6456605091972767e-06, -1.628528937022408e-06, -1.0783147149928712e-06,
        -1.6008652711400803e-06, -2.595818688812025e-06, -2.9100424225536623e-06, -3.255706224344393e-06,
        -4.483322807592755e-06, -4.728297710952892e-06, -3.188749968809582e-06, -2.0039642594174033e-06,
        -1.6964757673775461e-06, -1.6452906551041518e-06, -1.7821028527200579e-06, -1.6590343600721393e-06,
        -1.4478426467881737e-06,
    ],
    [
        5.440096964824813e-08, -2.8987117819203638e-08, -3.3267425539001447e-07, -3.038372338508946e-07,
        1.8907825321518325e-07, 1.7968293929058314e-08, -1.9103118035010408e-07, 1.74339413916458e-08,
        5.787630094189389e-07, 9.90374079783696e-07, 8.013337377317431e-07, 1.0748853244551332e-06,
        1.2506563942926134e-06, 1.6743810545836208e-06, 2.0115394666805215e-06, 2.173805655793545e-06,
        1.6819264258458068e-06, 8.537585249765819e-07, 4.87470706951304e-08, -4.0746440968580386e-07,
        -2.917789959165475e-07, 3.864317920831702e-07, 6.53152215056239e-07, 6.582649544810474e-07,
        8.405724068367942e-07, 2.756175894490778e-07, -9.245291632767593e-07, -2.162371830812889e-06,
        -1.7995808301210747e-06, -1.2297764528917093e-06, -7.196043823607928e-07, -4.715777141629305e-07,
        -6.988587293670684e-07, -1.2318773509344309e-06, -1.3334093699453945e-06, -1.433884405589081e-06,
        -2.0873622979427185e-06, -2.242983467116309e-06, -1.4318083114861973e-06, -8.717337037172889e-07,
        -8.099965424132288e-07, -6.974370747918638e-07, -8.757312810832732e-07, -7.151637576986369e-07,
        -7.07411868061138e-07,
    ],
    [
        2.2986099134845316e-08, -7.595747627161946e-09, -1.2331341327278553e-07, -1.3969939261333879e-07,
        1.0676178782018717e-07, -2.684932700343637e-09, -7.901320444512813e-08, -7.043215363301005e-10,
        2.0142293422899532e-07, 3.967429204550612e-07, 2.4535841635360216e-07, 4.150198120734214e-07,
        4.230298900379009e-07, 6.185882586947172e-07, 7.134443545524342e-07, 8.098010915853073e-07,
        6.060044794103053e-07, 3.0974070373077e-07, 4.786737010109052e-09, -1.55807159824221e-07,
        -1.3034342619837094e-07, 1.594370275745038e-07, 2.471254774028742e-07, 2.1297724951290637e-07,
        3.4122502218496615e-07, 9.761061491666012e-08, -3.011385388588864e-07, -8.599439425202864e-07,
        -6.216606138460816e-07, -4.5471789862184705e-07, -2.453397144879432e-07, -1.6218756236059735e-07,
        -2.3386437250602104e-07, -4.638889133742913e-07, -4.795889194472446e-07, -4.877506838589764e-07,
        -7.651280015126543e-07, -8.417535816740698e-07, -5.007971749826149e-07, -2.9159456834064095e-07,
        -3.107183180343185e-07, -2.1976732458796418e-07, -3.4731847348645614e-07, -2.3167926747217e-07,
        -2.764665303191046e-07,
    ],
    [
        6.850233941401852e-09, -1.3464707665231265e-09, -3.177624832645491e-08, -4.6479763616572697e-08,
        4.08412283131759e-08, -4.585787350453532e-09, -2.2951037412545885e-08, -1.8871577172904004e-09,
        4.808219731635081e-08, 1.1567899649167269e-07, 4.6604387721702676e-08, 1.1703846980448393e-07,
        9.763428271142663e-08, 1.6412474530797967e-07, 1.7719827577415314e-07, 2.1577154099314495e-07,
        1.5383172600514584e-07, 8.014968832156753e-08, -2.9510929927786257e-09, -4.169011848712644e-08,
        -4.176539738613405e-08, 4.754578899077897e-08, 6.715570540275633e-08, 4.5270070421247534e-08,
        1.0052174438462173e-07, 2.213329564385972e-08, -6.408609012168934e-08, -2.475263206105996e-07,
        -1.4744904538114073e-07, -1.2121434553236695e-07, -5.7765468153431024e-08, -3.981375642601694e-08,
        -5.3471184219273565e-08, -1.2524057717777922e-07, -1.2225646339429423e-07, -1.1483804213295108e-07,
        -1.993002761847437e-07, -2.2564160185141358e-07, -1.2281031682699152e-07, -6.69461351443697e-08,
        -8.688808201943439e-08, -4.424608530004922e-08, -1.006476146492827e-07, -4.915289508614199e-08,
        -7.819079843728757e-08,
    ],
    [
        1.1266418379415363e-09, -2.6332927229848926e-10, -4.302685871649931e-09, -9.200888850254159e-09,
        9.000386047295688e-09, -1.811193231281549e-09, -3.7243611063824624e-09, -3.14980651980186e-10,
        5.621024931079942e-09, 2.0092769543348e-08, 2.343589948323866e-09, 1.98475914252659e-08,
        1.1028552309719538e-08, 2.511036913377974e-08, 2.3598598524145453e-08, 3.271004457896717e-08,
        2.1301871609607895e-08, 1.1747307884797299e-08, -1.3814231012282775e-09, -5.998213851649253e-09,
        -7.855815862336602e-09, 8.33187610300606e-09, 1.0505416395006513e-08, 4.05486372348855e-09,
        1.756166088303654e-08, 1.6364881951790301e-09, -5.401515898719863e-09, -4.187168330640353e-08,
        -1.7461060136445423e-08, -1.894515611825274e-08, -6.877830224799986e-09, -5.742327796848066e-09,
        -6.014048130586962e-09, -1.9365101589350593e-08, -1.722611989353804e-08, -1.4104051794772842e-08,
        -2.896973129094526e-08, -3.4228068364729835e-08, -1.631113400771731e-08, -7.859999221767448e-09,
        -1.4413636385750284e-08, -3.096498581996724e-09, -1.745437833736707e-08, -4.263963213524353e-09,
        -1.293373240737648e-08,
    ],
]
