"""
run.py

SliceMarket can be launched by running "python run.py"
assuming that the Python module dependencies
have been installed, see:
requirements.txt

e.g. python run.py --generate --seed 7 --slices 20 --load mid
"""
import sys
import slicemarket.SliceMarket

sys.exit(slicemarket.SliceMarket.Run(sys.argv))
