"""
半束有向系の貼り合わせと条件 (za)/(bal)/(mon)/(lax)。
"""
