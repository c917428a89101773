"""Printed statistics rows for n = 1000..4000 (999..3999 for odd OD rows).

Columns: n, L mean / n, L variance / n^2, L median / n, scaled S mean,
scaled S second moment.  Values are kept as text so the number of printed
decimals is known.
"""

REFERENCE_ROWS = {
    "1A": ("rounds", {
        1000: ('0.621184', '0.036672', '0.6020', '0.862134', '1.317448'),
        2000: ('0.622539', '0.036764', '0.6040', '0.834706', '1.312715'),
        3000: ('0.623052', '0.036802', '0.6050', '0.820866', '1.311031'),
        4000: ('0.623326', '0.036823', '0.6053', '0.811867', '1.310156'),
    }),
    "1B": ("rounds-variant", {
        1000: ('0.622431', '0.036818', '0.6030', '1.846026', '3.574315'),
        2000: ('0.623163', '0.036837', '0.6050', '1.816840', '3.564892'),
        3000: ('0.623468', '0.036851', '0.6053', '1.802115', '3.561459'),
        4000: ('0.623638', '0.036860', '0.6055', '1.792542', '3.559653'),
    }),
    "2A": ("colored-perms", {
        1000: ('0.476115', '0.027160', '0.4480', '1.292899', '1.011228'),
        2000: ('0.475877', '0.027132', '0.4480', '1.291149', '0.976960'),
        3000: ('0.475798', '0.027123', '0.4480', '1.290504', '0.959564'),
        4000: ('0.475758', '0.027119', '0.4480', '1.290163', '0.948225'),
    }),
    "2B": ("colored-derangements", {
        1000: ('0.477065', '0.027268', '0.4480', '3.159931', '6.534345'),
        2000: ('0.476353', '0.027187', '0.4485', '3.149165', '6.372009'),
        3000: ('0.476115', '0.027160', '0.4483', '3.145123', '6.288169'),
        4000: ('0.475996', '0.027146', '0.4482', '3.142963', '6.233112'),
    }),
    "3": ("colored-mappings", {
        1000: ('0.544944', '0.032583', '0.5170', '2.590160', '5.925381'),
        2000: ('0.542744', '0.032407', '0.5155', '2.597466', '6.079830'),
        3000: ('0.541778', '0.032331', '0.5150', '2.600326', '6.152861'),
        4000: ('0.541205', '0.032285', '0.5142', '2.601910', '6.198088'),
    }),
    "4A": ("ev-perms", {
        1000: ('0.758202', '0.037044', '0.7850', '2.028405', '1.400424'),
        2000: ('0.758012', '0.037026', '0.7865', '2.037816', '1.400250'),
        3000: ('0.757949', '0.037020', '0.7863', '2.042013', '1.400192'),
        4000: ('0.757918', '0.037016', '0.7862', '2.044523', '1.400163'),
    }),
    "4B": ("od-perms", {
        1000: ('0.757601', '0.036937', '0.7860', '0.552117', '0.125460'),
        2000: ('0.757712', '0.036972', '0.7860', '0.553094', '0.125440'),
        3000: ('0.757749', '0.036984', '0.7860', '0.553535', '0.125434'),
        4000: ('0.757768', '0.036990', '0.7860', '0.553800', '0.125431'),
    }),
    "4C": ("od-perms", {
        999: ('0.758045', '0.037077', '0.7845', '1.501395', '1.274342'),
        1999: ('0.757934', '0.037042', '0.7864', '1.502628', '1.274497'),
        2999: ('0.757897', '0.037031', '0.7863', '1.503154', '1.274549'),
        3999: ('0.757878', '0.037025', '0.7862', '1.503461', '1.274575'),
    }),
}
