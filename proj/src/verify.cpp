namespace fibcalc {}
