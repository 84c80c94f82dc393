"""
冪等な場合の双対（原子と部分写像）。
"""
