import numpy as np

# Gravity constant, m/s^2
GRAVITY = 9.81

E1 = np.array([1.0, 0.0, 0.0])
E2 = np.array([0.0, 1.0, 0.0])
E3 = np.array([0.0, 0.0, 1.0])
